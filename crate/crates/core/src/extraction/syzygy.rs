//! A `d`-meager asterism yields an `a`-syzygy or a plain
//! `(s, l)`-constellation.
//!
//! Each S-vertex spans the interval from its first to its last neighbour on
//! `L`. Pairwise disjoint spans, read left to right, are a syzygy. Spans
//! sharing a point `u` give two halves of `L` around `u` that every
//! surviving vertex meets, once the at most `d` neighbours of `u` are
//! dropped; recurse into the left half and add the right half's interior as
//! one more path.

use crate::asterism::{OrderedAsterism, SyzygyEnd};
use crate::detectors::structures::{validate_constellation, Constellation};
use crate::graph::{Graph, PathWitness, Vertex};

use super::interval::{interval_split, IntervalSplit};
use super::{pre, Extraction, ExtractionError, ExtractionOutcome, Step};

/// Size at which success is guaranteed: `a^{l-1} (s + d(l-1))`.
pub fn guaranteed_size(a: usize, l: usize, s: usize, d: usize) -> Option<usize> {
    a.checked_pow(u32::try_from(l.checked_sub(1)?).ok()?)?.checked_mul(s.checked_add(d.checked_mul(l - 1)?)?)
}

struct Params {
    a: usize,
    s: usize,
    d: usize,
}

pub fn asterism_to_syzygy_or_constellation(
    g: &Graph,
    ast: &OrderedAsterism,
    target_a: usize,
    target_l: usize,
    target_s: usize,
    d: usize,
) -> Result<Extraction, ExtractionError> {
    pre(target_a >= 1 && target_l >= 1, || "a and l must be positive".into())?;
    ast.validate(g).map_err(|e| ExtractionError::Precondition(format!("not an asterism: {e}")))?;
    pre(ast.is_d_meager(g, d), || format!("asterism is not {d}-meager"))?;
    let p = Params { a: target_a, s: target_s, d };
    let mut trace = Vec::new();
    let outcome = descend(g, &p, ast.order.clone(), ast.path.clone(), target_l, 0, &mut trace);
    check(g, ast, &p, target_l, &outcome)?;
    Ok(Extraction { outcome, trace })
}

fn descend(g: &Graph, p: &Params, order: Vec<Vertex>, path: Vec<Vertex>, l: usize, depth: usize, trace: &mut Vec<Step>) -> ExtractionOutcome {
    let last = path.len() - 1;
    if l == 1 {
        trace.push(Step::SinglePath { depth, s: order.len() });
        if order.len() < p.s || path.len() < 3 {
            return ExtractionOutcome::Insufficient { reason: format!("{} S-vertices left for a ({}, 1)-constellation", order.len(), p.s) };
        }
        let constellation = Constellation { s: order[..p.s].to_vec(), paths: vec![PathWitness(path[1..last].to_vec())] };
        return ExtractionOutcome::PlainConstellation { constellation };
    }
    let sub = OrderedAsterism::new(order, path);
    let lay = sub.layout(g);
    let family: Vec<(usize, usize)> = lay.spots.iter().map(|sp| (sp[0], *sp.last().unwrap())).collect();
    let b = guaranteed_size(p.a, l - 1, p.s, p.d).and_then(|n| n.checked_add(p.d)).unwrap_or(usize::MAX);
    let split = interval_split(&family, p.a, b);
    let result = match &split {
        IntervalSplit::Stable { .. } => "stable".to_string(),
        IntervalSplit::Clique { point, .. } => format!("clique at position {point}"),
        IntervalSplit::Insufficient { max_stable, max_clique } => format!("insufficient: stable {max_stable}, clique {max_clique}"),
    };
    trace.push(Step::Split { depth, family: family.len(), stable_target: p.a, clique_target: b, result });
    match split {
        IntervalSplit::Stable { members } => {
            // greedy order is by right end, and the spans are disjoint, so
            // this is also left to right
            let order = members.iter().map(|&k| sub.order[k]).collect();
            ExtractionOutcome::Syzygy { asterism: OrderedAsterism::new(order, sub.path.clone()) }
        }
        IntervalSplit::Insufficient { .. } => ExtractionOutcome::Insufficient { reason: format!("interval split failed at depth {depth}") },
        IntervalSplit::Clique { point, .. } => {
            let u = sub.path[point];
            let spanning: Vec<usize> = (0..family.len()).filter(|&k| family[k].0 <= point && point <= family[k].1).collect();
            let (dropped, kept): (Vec<usize>, Vec<usize>) = spanning.into_iter().partition(|&k| g.has_edge(sub.order[k], u));
            trace.push(Step::Cut { depth, point: u, dropped: dropped.iter().map(|&k| sub.order[k]).collect(), kept: kept.len() });
            if point + 1 >= last {
                return ExtractionOutcome::Insufficient { reason: "cut point leaves no right half".into() };
            }
            let left_order: Vec<Vertex> = kept.iter().map(|&k| sub.order[k]).collect();
            let left_path = sub.path[..=point].to_vec();
            match descend(g, p, left_order, left_path, l - 1, depth + 1, trace) {
                ExtractionOutcome::PlainConstellation { mut constellation } => {
                    constellation.paths.push(PathWitness(sub.path[point + 1..last].to_vec()));
                    ExtractionOutcome::PlainConstellation { constellation }
                }
                other => other,
            }
        }
    }
}

/// Re-checks the outcome against the definitions and the input.
fn check(g: &Graph, ast: &OrderedAsterism, p: &Params, l: usize, outcome: &ExtractionOutcome) -> Result<(), ExtractionError> {
    let reject = |m: String| Err(ExtractionError::Rejected(m));
    match outcome {
        ExtractionOutcome::Syzygy { asterism } => {
            if asterism.s() != p.a || asterism.order.iter().any(|v| !ast.order.contains(v)) {
                return reject("syzygy has the wrong S".into());
            }
            if asterism.validate(g).is_err() || ast.locate_subpath(&asterism.path).is_err() {
                return reject("syzygy is not an asterism on a subpath".into());
            }
            if asterism.syzygy_end(g) != Some(SyzygyEnd::Start) && asterism.s() > 1 {
                return reject("neighbourhoods are not in order".into());
            }
        }
        ExtractionOutcome::PlainConstellation { constellation: c } => {
            if c.s.len() != p.s || c.paths.len() != l || c.s.iter().any(|v| !ast.order.contains(v)) {
                return reject("constellation has the wrong shape".into());
            }
            let inner = &ast.path[1..ast.path.len() - 1];
            if c.paths.iter().any(|q| q.0.iter().any(|v| !inner.contains(v))) {
                return reject("a constellation path leaves the interior of L".into());
            }
            validate_constellation(g, &c.s, &c.paths, true).map_err(|e| ExtractionError::Rejected(e.to_string()))?;
        }
        ExtractionOutcome::Insufficient { .. } => {}
        other => return reject(format!("unexpected outcome {other:?}")),
    }
    Ok(())
}
