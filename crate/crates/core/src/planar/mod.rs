//! st-planar embeddings and their duals.
//!
//! Every arc `e` has two darts: `2e` runs tail to head, `2e + 1` head to
//! tail. An [`Embedding`] lists, for every node, its outgoing darts in
//! counterclockwise order. Faces are traced with `next(u -> v)` = the
//! rotation predecessor of `v -> u` at `v`, which keeps each face on the
//! left of its darts: bounded faces come out counterclockwise and the outer
//! face clockwise.
//!
//! In the dual, the face chosen as outer is split into an upper node `U*`
//! and a lower node `L*`; the shortest `U* -> L*` distance is the maximum
//! flow value.

mod distances;

pub use distances::{hassin_flow_assignment, planar_max_flow_value, shortest_distances, DistanceIndex};

use crate::error::{Error, Result};
use crate::graph::{ArcId, Network, NodeId};

pub type Dart = usize;

pub fn dart(arc: ArcId, reversed: bool) -> Dart {
    2 * arc + reversed as usize
}

pub fn dart_arc(d: Dart) -> ArcId {
    d / 2
}

fn dart_tail(net: &Network, d: Dart) -> NodeId {
    let arc = net.arcs()[d / 2];
    if d % 2 == 0 {
        arc.tail
    } else {
        arc.head
    }
}

fn dart_head(net: &Network, d: Dart) -> NodeId {
    dart_tail(net, d ^ 1)
}

/// Rotation system: counterclockwise outgoing darts per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<Dart>>,
    position: Vec<usize>,
}

impl Embedding {
    /// Checks that every dart of `net` appears exactly once, in the rotation
    /// of its own tail.
    pub fn new(net: &Network, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if rotation.len() != net.node_count() {
            return Err(Error::BadRotation(format!(
                "{} rotations for {} nodes",
                rotation.len(),
                net.node_count()
            )));
        }
        let darts = 2 * net.arc_count();
        let mut position = vec![usize::MAX; darts];
        for (v, darts_at) in rotation.iter().enumerate() {
            for (i, &d) in darts_at.iter().enumerate() {
                if d >= darts {
                    return Err(Error::BadRotation(format!("node {v}: unknown dart {d}")));
                }
                if dart_tail(net, d) != v {
                    return Err(Error::BadRotation(format!(
                        "node {v}: arc {} end listed at the wrong node",
                        dart_arc(d)
                    )));
                }
                if position[d] != usize::MAX {
                    return Err(Error::BadRotation(format!(
                        "node {v}: arc {} end listed twice",
                        dart_arc(d)
                    )));
                }
                position[d] = i;
            }
        }
        if let Some(d) = position.iter().position(|&p| p == usize::MAX) {
            return Err(Error::BadRotation(format!(
                "arc {} end at node {} is missing",
                dart_arc(d),
                dart_tail(net, d)
            )));
        }
        Ok(Embedding { rotation, position })
    }

    /// Rotation from a straight-line drawing: darts sorted by angle.
    pub fn from_coordinates(net: &Network, coords: &[(f64, f64)]) -> Result<Self> {
        if coords.len() != net.node_count() {
            return Err(Error::BadRotation("one coordinate per node required".into()));
        }
        let mut rotation: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); net.node_count()];
        for d in 0..2 * net.arc_count() {
            let (u, v) = (dart_tail(net, d), dart_head(net, d));
            let angle = (coords[v].1 - coords[u].1).atan2(coords[v].0 - coords[u].0);
            rotation[u].push((angle, d));
        }
        let rotation = rotation
            .into_iter()
            .map(|mut r| {
                r.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                r.into_iter().map(|(_, d)| d).collect()
            })
            .collect();
        Embedding::new(net, rotation)
    }

    pub fn rotation(&self, v: NodeId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn node_count(&self) -> usize {
        self.rotation.len()
    }

    fn next_in_face(&self, net: &Network, d: Dart) -> Dart {
        let back = d ^ 1;
        let at = &self.rotation[dart_tail(net, back)];
        let i = self.position[back];
        at[(i + at.len() - 1) % at.len()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    /// Closed boundary walks, each face on the left of its darts.
    pub walks: Vec<Vec<Dart>>,
    /// Face index of every dart.
    pub face_of: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

/// Traces all faces and enforces Euler's formula `n - m + f = 2`.
pub fn compute_faces(net: &Network, emb: &Embedding) -> Result<Faces> {
    if emb.node_count() != net.node_count() || emb.position.len() != 2 * net.arc_count() {
        return Err(Error::BadRotation("embedding belongs to another network".into()));
    }
    let darts = 2 * net.arc_count();
    let mut face_of = vec![usize::MAX; darts];
    let mut walks = Vec::new();
    for first in 0..darts {
        if face_of[first] != usize::MAX {
            continue;
        }
        let face = walks.len();
        let mut walk = Vec::new();
        let mut d = first;
        loop {
            face_of[d] = face;
            walk.push(d);
            d = emb.next_in_face(net, d);
            if d == first {
                break;
            }
            if face_of[d] != usize::MAX {
                return Err(Error::BadRotation("face traversal did not close".into()));
            }
        }
        walks.push(walk);
    }
    let (n, m, f) = (net.node_count() as i64, net.arc_count() as i64, walks.len() as i64);
    if n - m + f != 2 {
        return Err(Error::NotPlanar(format!(
            "n - m + f = {n} - {m} + {f} = {}, expected 2",
            n - m + f
        )));
    }
    Ok(Faces { walks, face_of })
}

/// The outer face cut at its first `s` and the following first `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterSplit {
    pub face: usize,
    /// Darts from `s` to `t`; their left side is `U`.
    pub upper: Vec<Dart>,
    /// Darts from `t` back to `s`; their left side is `L`.
    pub lower: Vec<Dart>,
}

pub fn split_outer_face(net: &Network, faces: &Faces) -> Result<OuterSplit> {
    let (s, t) = (net.source(), net.sink());
    for (face, walk) in faces.walks.iter().enumerate() {
        let Some(at_s) = walk.iter().position(|&d| dart_tail(net, d) == s) else {
            continue;
        };
        let rotated: Vec<Dart> = walk[at_s..].iter().chain(&walk[..at_s]).copied().collect();
        let Some(at_t) = rotated.iter().position(|&d| dart_tail(net, d) == t) else {
            continue;
        };
        return Ok(OuterSplit {
            face,
            upper: rotated[..at_t].to_vec(),
            lower: rotated[at_t..].to_vec(),
        });
    }
    Err(Error::NoStFace)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualArc {
    pub tail: usize,
    pub head: usize,
    pub length: f64,
    pub primal: ArcId,
    /// Zero-length reverse companion of a directed primal arc.
    pub reverse: bool,
}

/// Dual multigraph. Node ids are face indices, except that the outer face
/// index stands for `U*` and one extra node (`face count`) is `L*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualGraph {
    directed: bool,
    node_count: usize,
    upper: usize,
    lower: usize,
    arcs: Vec<DualArc>,
    dart_node: Vec<usize>,
    primal_ends: Vec<(NodeId, NodeId)>,
    primal_node_count: usize,
    source: NodeId,
    sink: NodeId,
}

pub fn build_dual(net: &Network, emb: &Embedding) -> Result<DualGraph> {
    let faces = compute_faces(net, emb)?;
    let split = split_outer_face(net, &faces)?;
    let upper = split.face;
    let lower = faces.len();
    let mut dart_node = faces.face_of.clone();
    for &d in &split.lower {
        dart_node[d] = lower;
    }

    let mut arcs = Vec::with_capacity(if net.is_directed() { 2 } else { 1 } * net.arc_count());
    for (e, arc) in net.arcs().iter().enumerate() {
        let (left, right) = (dart_node[2 * e], dart_node[2 * e + 1]);
        arcs.push(DualArc {
            tail: left,
            head: right,
            length: arc.capacity,
            primal: e,
            reverse: false,
        });
        if net.is_directed() {
            arcs.push(DualArc {
                tail: right,
                head: left,
                length: 0.0,
                primal: e,
                reverse: true,
            });
        }
    }

    Ok(DualGraph {
        directed: net.is_directed(),
        node_count: faces.len() + 1,
        upper,
        lower,
        arcs,
        dart_node,
        primal_ends: net.arcs().iter().map(|a| (a.tail, a.head)).collect(),
        primal_node_count: net.node_count(),
        source: net.source(),
        sink: net.sink(),
    })
}

impl DualGraph {
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    /// Dual arcs; directed duals carry a zero-length reverse arc per primal arc.
    pub fn arcs(&self) -> &[DualArc] {
        &self.arcs
    }

    pub fn primal_arc_count(&self) -> usize {
        self.primal_ends.len()
    }

    pub fn primal_node_count(&self) -> usize {
        self.primal_node_count
    }

    pub fn terminals(&self) -> (NodeId, NodeId) {
        (self.source, self.sink)
    }

    /// Dual node of the face to the left of primal arc `e`.
    pub fn left(&self, e: ArcId) -> usize {
        self.dart_node[2 * e]
    }

    /// Dual node of the face to the right of primal arc `e`.
    pub fn right(&self, e: ArcId) -> usize {
        self.dart_node[2 * e + 1]
    }

    /// The dual as seen after deleting `removed` from the primal: their dual
    /// arcs get length zero, which merges the faces on either side.
    pub fn with_removed(&self, removed: &[ArcId]) -> DualGraph {
        let mut out = self.clone();
        for a in &mut out.arcs {
            if removed.contains(&a.primal) {
                a.length = 0.0;
            }
        }
        out
    }

    /// Dual nodes of the faces around primal node `v`, sorted and deduplicated.
    pub fn node_faces(&self, v: NodeId) -> Vec<usize> {
        let mut faces = Vec::new();
        for (e, &(tail, head)) in self.primal_ends.iter().enumerate() {
            if tail == v {
                faces.push(self.left(e));
            }
            if head == v {
                faces.push(self.right(e));
            }
        }
        faces.sort_unstable();
        faces.dedup();
        faces
    }

    /// Faces around every primal node as offsets into one flat list.
    pub(crate) fn all_node_faces(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.primal_node_count;
        let mut start = vec![0; n + 1];
        for &(tail, head) in &self.primal_ends {
            start[tail + 1] += 1;
            start[head + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut faces = vec![0; start[n]];
        for (e, &(tail, head)) in self.primal_ends.iter().enumerate() {
            faces[fill[tail]] = self.left(e);
            fill[tail] += 1;
            faces[fill[head]] = self.right(e);
            fill[head] += 1;
        }
        // sort and dedup each node's slice in place, compacting as we go
        let mut out_start = vec![0; n + 1];
        let mut len = 0;
        for v in 0..n {
            let slice = &mut faces[start[v]..start[v + 1]];
            slice.sort_unstable();
            let mut prev = usize::MAX;
            for i in start[v]..start[v + 1] {
                let f = faces[i];
                if f != prev {
                    faces[len] = f;
                    len += 1;
                    prev = f;
                }
            }
            out_start[v + 1] = len;
        }
        faces.truncate(len);
        (out_start, faces)
    }}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Arc;

    fn net(directed: bool, n: usize, arcs: &[(usize, usize, f64)], s: usize, t: usize) -> Network {
        let arcs = arcs.iter().map(|&(u, v, c)| Arc::new(u, v, c)).collect();
        Network::new(directed, n, arcs, s, t).unwrap()
    }

    /// s=0 at (0,0), a=1 at (1,1), t=2 at (2,0).
    fn triangle() -> (Network, Embedding) {
        let g = net(true, 3, &[(0, 1, 2.0), (1, 2, 3.0), (0, 2, 4.0)], 0, 2);
        let emb = Embedding::from_coordinates(&g, &[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        (g, emb)
    }

    #[test]
    fn face_counts() {
        let (g, emb) = triangle();
        assert_eq!(compute_faces(&g, &emb).unwrap().len(), 2);

        let single = net(true, 2, &[(0, 1, 5.0)], 0, 1);
        let emb = Embedding::new(&single, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(compute_faces(&single, &emb).unwrap().len(), 1);

        let square = net(false, 4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)], 0, 2);
        let coords = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let emb = Embedding::from_coordinates(&square, &coords).unwrap();
        assert_eq!(compute_faces(&square, &emb).unwrap().len(), 2);
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        // K4 with a rotation that is not a planar one: one node's order flipped
        let k4 = net(
            false,
            4,
            &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)],
            0,
            3,
        );
        let coords = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)];
        let good = Embedding::from_coordinates(&k4, &coords).unwrap();
        assert_eq!(compute_faces(&k4, &good).unwrap().len(), 4);
        let mut rotation: Vec<Vec<Dart>> = (0..4).map(|v| good.rotation(v).to_vec()).collect();
        rotation[3].swap(0, 1);
        let bad = Embedding::new(&k4, rotation).unwrap();
        assert!(matches!(compute_faces(&k4, &bad), Err(Error::NotPlanar(_))));
    }

    #[test]
    fn rotation_validation() {
        let (g, emb) = triangle();
        let mut rotation: Vec<Vec<Dart>> = (0..3).map(|v| emb.rotation(v).to_vec()).collect();
        rotation[0].pop();
        assert!(matches!(Embedding::new(&g, rotation.clone()), Err(Error::BadRotation(_))));
        rotation[0].push(dart(1, false));
        assert!(matches!(Embedding::new(&g, rotation), Err(Error::BadRotation(_))));
    }

    #[test]
    fn triangle_split_and_dual() {
        let (g, emb) = triangle();
        let faces = compute_faces(&g, &emb).unwrap();
        let split = split_outer_face(&g, &faces).unwrap();
        // outer walk s->a->t->s: upper = s-a, a-t; lower = t-s
        assert_eq!(split.upper, vec![dart(0, false), dart(1, false)]);
        assert_eq!(split.lower, vec![dart(2, true)]);

        let dual = build_dual(&g, &emb).unwrap();
        let (u, l) = (dual.upper(), dual.lower());
        let inner = 1 - split.face;
        assert_eq!((dual.left(0), dual.right(0)), (u, inner));
        assert_eq!((dual.left(1), dual.right(1)), (u, inner));
        assert_eq!((dual.left(2), dual.right(2)), (inner, l));
        assert_eq!(dual.arcs().len(), 6);
        assert_eq!(dual.arcs().iter().filter(|a| a.reverse).count(), 3);
        assert!(dual.arcs().iter().all(|a| a.length >= 0.0));
        assert_eq!(dual.node_faces(1), {
            let mut v = vec![u, inner];
            v.sort();
            v
        });
    }

    #[test]
    fn single_arc_and_path_split() {
        let single = net(true, 2, &[(0, 1, 5.0)], 0, 1);
        let emb = Embedding::new(&single, vec![vec![0], vec![1]]).unwrap();
        let dual = build_dual(&single, &emb).unwrap();
        assert_ne!(dual.upper(), dual.lower());
        assert_eq!((dual.left(0), dual.right(0)), (dual.upper(), dual.lower()));

        let path = net(true, 3, &[(0, 1, 3.0), (1, 2, 7.0)], 0, 2);
        let emb = Embedding::new(&path, vec![vec![0], vec![1, 2], vec![3]]).unwrap();
        let faces = compute_faces(&path, &emb).unwrap();
        let split = split_outer_face(&path, &faces).unwrap();
        assert_eq!(split.upper, vec![0, 2]);
        assert_eq!(split.lower, vec![3, 1]);
    }

    #[test]
    fn parallel_arcs_make_a_middle_face() {
        let g = net(true, 2, &[(0, 1, 2.0), (0, 1, 3.0)], 0, 1);
        // at s: arc 1 then arc 0 counterclockwise; at t the reverse order
        let emb = Embedding::new(&g, vec![vec![2, 0], vec![1, 3]]).unwrap();
        let faces = compute_faces(&g, &emb).unwrap();
        assert_eq!(faces.len(), 2);
        let dual = build_dual(&g, &emb).unwrap();
        let middle = (0..dual.node_count())
            .find(|&x| x != dual.upper() && x != dual.lower())
            .unwrap();
        let ends: Vec<(usize, usize)> = (0..2).map(|e| (dual.left(e), dual.right(e))).collect();
        assert!(ends.contains(&(dual.upper(), middle)));
        assert!(ends.contains(&(middle, dual.lower())));
    }

    #[test]
    fn no_st_face() {
        // s and t on opposite sides of a separating triangle
        //   t inside triangle (a, b, c), s outside attached to a
        let g = net(
            false,
            5,
            &[
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 1, 1.0),
                (0, 1, 1.0),
                (4, 1, 1.0),
                (4, 2, 1.0),
                (4, 3, 1.0),
            ],
            0,
            4,
        );
        let coords = [(-2.0, 0.0), (0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)];
        let emb = Embedding::from_coordinates(&g, &coords).unwrap();
        assert_eq!(build_dual(&g, &emb), Err(Error::NoStFace));
    }
}
