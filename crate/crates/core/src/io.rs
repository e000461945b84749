//! Text formats.
//!
//! Networks use the DIMACS max-flow dialect with 1-based node ids:
//!
//! ```text
//! c comment
//! p max 3 3        (p umax for an undirected network)
//! n 1 s
//! n 3 t
//! a 1 2 2
//! ```
//!
//! Embeddings list one rotation per node, neighbors counterclockwise:
//! `r <node> <nbr> <nbr#k> ...`. The `#k` suffix names the 1-based arc id
//! and is required only when several arcs join the same two nodes.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Arc, ArcId, Network, NodeId};
use crate::planar::{dart, dart_arc, Dart, Embedding};

fn node_id(token: &str, n: usize, line: usize) -> Result<NodeId> {
    match token.parse::<usize>() {
        Ok(id) if (1..=n).contains(&id) => Ok(id - 1),
        _ => Err(Error::parse(line, format!("bad node id `{token}` (expected 1..={n})"))),
    }
}

pub fn parse_network(text: &str) -> Result<Network> {
    let mut header: Option<(bool, usize, usize)> = None;
    let (mut source, mut sink) = (None, None);
    let mut arcs = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = fields.first() else {
            continue;
        };
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(Error::parse(line, "second problem line"));
            }
            let [_, kind, n, m] = fields[..] else {
                return Err(Error::parse(line, "expected `p max|umax <nodes> <arcs>`"));
            };
            let directed = match kind {
                "max" => true,
                "umax" => false,
                other => return Err(Error::parse(line, format!("unknown problem `{other}`"))),
            };
            let n = n
                .parse()
                .map_err(|_| Error::parse(line, format!("bad node count `{n}`")))?;
            let m = m
                .parse()
                .map_err(|_| Error::parse(line, format!("bad arc count `{m}`")))?;
            header = Some((directed, n, m));
            continue;
        }
        let Some((_, n, _)) = header else {
            return Err(Error::parse(line, "problem line must come first"));
        };
        match tag {
            "n" => {
                let [_, id, role] = fields[..] else {
                    return Err(Error::parse(line, "expected `n <id> s|t`"));
                };
                let v = node_id(id, n, line)?;
                let slot = match role {
                    "s" => &mut source,
                    "t" => &mut sink,
                    other => return Err(Error::parse(line, format!("unknown role `{other}`"))),
                };
                if slot.replace(v).is_some() {
                    return Err(Error::parse(line, format!("terminal `{role}` given twice")));
                }
            }
            "a" => {
                let [_, u, v, cap] = fields[..] else {
                    return Err(Error::parse(line, "expected `a <u> <v> <capacity>`"));
                };
                let (u, v) = (node_id(u, n, line)?, node_id(v, n, line)?);
                let cap: f64 = cap
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad capacity `{cap}`")))?;
                arcs.push(Arc::new(u, v, cap));
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let Some((directed, n, m)) = header else {
        return Err(Error::parse(last, "missing problem line"));
    };
    let source = source.ok_or_else(|| Error::parse(last, "missing source line `n <id> s`"))?;
    let sink = sink.ok_or_else(|| Error::parse(last, "missing sink line `n <id> t`"))?;
    if arcs.len() != m {
        return Err(Error::parse(
            last,
            format!("problem line announces {m} arcs, found {}", arcs.len()),
        ));
    }
    Network::new(directed, n, arcs, source, sink)
}

pub fn format_network(net: &Network) -> String {
    let kind = if net.is_directed() { "max" } else { "umax" };
    let mut out = format!("p {kind} {} {}\n", net.node_count(), net.arc_count());
    writeln!(out, "n {} s", net.source() + 1).unwrap();
    writeln!(out, "n {} t", net.sink() + 1).unwrap();
    for arc in net.arcs() {
        writeln!(out, "a {} {} {}", arc.tail + 1, arc.head + 1, arc.capacity).unwrap();
    }
    out
}

fn arcs_between(net: &Network, u: NodeId, v: NodeId) -> impl Iterator<Item = ArcId> + '_ {
    net.arcs()
        .iter()
        .enumerate()
        .filter(move |(_, a)| (a.tail == u && a.head == v) || (a.tail == v && a.head == u))
        .map(|(e, _)| e)
}

fn dart_from(net: &Network, e: ArcId, v: NodeId) -> Dart {
    dart(e, net.arcs()[e].tail != v)
}

pub fn parse_embedding(text: &str, net: &Network) -> Result<Embedding> {
    let n = net.node_count();
    let mut rotation: Vec<Option<Vec<Dart>>> = vec![None; n];
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => continue,
            Some(&"r") => {}
            Some(other) => {
                return Err(Error::parse(line, format!("unknown line type `{other}`")))
            }
        }
        let Some(v) = fields.get(1) else {
            return Err(Error::parse(line, "expected `r <node> <neighbors...>`"));
        };
        let v = node_id(v, n, line)?;
        let mut darts = Vec::with_capacity(fields.len() - 2);
        for token in &fields[2..] {
            let (nbr, arc) = match token.split_once('#') {
                Some((nbr, k)) => {
                    let k = k
                        .parse::<usize>()
                        .ok()
                        .filter(|k| (1..=net.arc_count()).contains(k))
                        .ok_or_else(|| Error::parse(line, format!("bad arc id in `{token}`")))?;
                    (nbr, Some(k - 1))
                }
                None => (*token, None),
            };
            let nbr = node_id(nbr, n, line)?;
            let e = match arc {
                Some(e) => {
                    let a = net.arcs()[e];
                    if a.other(v) != Some(nbr) {
                        return Err(Error::parse(
                            line,
                            format!("arc {} does not join {} and {}", e + 1, v + 1, nbr + 1),
                        ));
                    }
                    e
                }
                None => {
                    let mut joining = arcs_between(net, v, nbr);
                    let e = joining.next().ok_or_else(|| {
                        Error::parse(line, format!("no arc joins {} and {}", v + 1, nbr + 1))
                    })?;
                    if joining.next().is_some() {
                        return Err(Error::parse(
                            line,
                            format!("parallel arcs join {} and {}; add `#<arc>`", v + 1, nbr + 1),
                        ));
                    }
                    e
                }
            };
            darts.push(dart_from(net, e, v));
        }
        if rotation[v].replace(darts).is_some() {
            return Err(Error::parse(line, format!("second rotation for node {}", v + 1)));
        }
    }
    if let Some(v) = rotation.iter().position(Option::is_none) {
        return Err(Error::parse(last, format!("no rotation for node {}", v + 1)));
    }
    Embedding::new(net, rotation.into_iter().map(Option::unwrap).collect())
}

pub fn format_embedding(net: &Network, emb: &Embedding) -> String {
    let mut out = String::new();
    for v in 0..net.node_count() {
        write!(out, "r {}", v + 1).unwrap();
        for &d in emb.rotation(v) {
            let e = dart_arc(d);
            let nbr = net.arcs()[e].other(v).expect("dart leaves v");
            if arcs_between(net, v, nbr).nth(1).is_some() {
                write!(out, " {}#{}", nbr + 1, e + 1).unwrap();
            } else {
                write!(out, " {}", nbr + 1).unwrap();
            }
        }
        out.push('\n');
    }
    out
}
