//! From a 2-ample interrupted ordered `s^c`-asterism to a full
//! `(s, o)`-occultation inside it, or to `c` disjoint anticomplete cycles
//! of length at least `o + 2`.
//!
//! The recursion is on `c + s`. With `r = s^c`, `r' = (s-1)^c` and
//! `x = π(r)`: if `x` meets every closed piece of length at least `o` of
//! the `r'`-prefix, recurse on that prefix with `s - 1` and put `x` on top
//! of the result. Otherwise a missed piece `P` and the S-vertex `z` seeing
//! both its ends form a cycle `H` that nothing else in `S` touches; a route
//! from `y = π(r'+1)` to `z` then hosts a smaller asterism anticomplete to
//! `H`, and we recurse there with `c - 1`.
//!
//! The smaller path is the route's interior minus one vertex at each end,
//! and minus one more on the `z` side when that end lies on `P`. Removing
//! two at each end can leave an S-vertex adjacent to an end of the new path
//! under 2-ampleness. Paths are always read in the direction of the outer
//! path.

use crate::asterism::OrderedAsterism;
use crate::detectors::perforation::verify_cycle_packing;
use crate::graph::{CycleWitness, Graph, PathWitness, Vertex};

use super::{pre, Extraction, ExtractionError, ExtractionOutcome, Step};

fn rejected(e: impl ToString) -> ExtractionError {
    ExtractionError::Rejected(e.to_string())
}

/// `cher(inner, x)` where `inner` is an `(outer, x, s-1)`-candidate and `x`
/// is a cherry on top of `outer | S_inner`. The result is a 2-ample
/// interrupted ordered asterism.
pub fn cherry_extend(g: &Graph, outer: &OrderedAsterism, inner: &OrderedAsterism, x: Vertex) -> Result<OrderedAsterism, ExtractionError> {
    outer.validate(g).map_err(|e| ExtractionError::Precondition(format!("outer is not an asterism: {e}")))?;
    pre(outer.is_d_ample(g, 2), || "outer asterism is not 2-ample".into())?;
    pre(outer.order.contains(&x), || format!("{x} is not in the outer S"))?;
    inner.validate(g).map_err(|e| ExtractionError::Precondition(format!("inner is not an asterism: {e}")))?;
    let candidate = outer.is_candidate(g, x, inner).map_err(|e| ExtractionError::Precondition(e.to_string()))?;
    pre(candidate, || "inner asterism is not a candidate".into())?;
    let restricted = outer.restrict(&inner.order).map_err(|e| ExtractionError::Precondition(e.to_string()))?;
    let cherry = restricted.is_cherry(g, x).map_err(|e| ExtractionError::Precondition(e.to_string()))?;
    pre(cherry, || format!("{x} is not a cherry on top of the restriction"))?;
    let out = inner.cher(g, x).map_err(rejected)?;
    out.validate(g).map_err(rejected)?;
    if !(out.is_d_ample(g, 2) && out.is_interrupted(g)) {
        return Err(rejected("extension is not 2-ample and interrupted"));
    }
    Ok(out)
}

/// Puts `π(r)` on top of a maximal extension of `prior`.
pub fn occultation_top(
    g: &Graph,
    a: &OrderedAsterism,
    r: usize,
    r_prime: usize,
    o: usize,
    prior: &OrderedAsterism,
) -> Result<OrderedAsterism, ExtractionError> {
    let s = prior.s() + 1;
    pre(r <= a.s() && r > r_prime && r_prime + 1 >= s, || format!("need |S| >= r > r' >= s-1, got r = {r}, r' = {r_prime}, s = {s}"))?;
    let outer = a.prefix(r);
    outer.validate(g).map_err(|e| ExtractionError::Precondition(format!("not an asterism: {e}")))?;
    pre(outer.is_d_ample(g, 2) && outer.is_interrupted(g), || "asterism is not 2-ample and interrupted".into())?;
    let lay = outer.layout(g);
    let x = outer.order[r - 1];
    let missed = lay.piece_spans(|k| k < r_prime).into_iter().find(|&(p, q, open)| !open && q - p >= o && !lay.meets(r - 1, p, q));
    pre(missed.is_none(), || format!("{x} misses a closed piece of length >= {o}"))?;
    pre(prior.order.iter().all(|v| outer.order[..r_prime].contains(v)), || "prior S is not inside the r'-prefix".into())?;
    pre(outer.locate_subpath(&prior.path).is_ok(), || "prior path is not a subpath".into())?;
    prior.validate(g).map_err(|e| ExtractionError::Precondition(format!("prior is not an asterism: {e}")))?;
    pre(prior.is_full_occultation(g, o), || "prior is not a full occultation".into())?;

    let grown = outer.maximal_extension(g, prior).map_err(rejected)?;
    if grown.validate(g).is_err() || !grown.is_full_occultation(g, o) {
        return Err(rejected("maximal extension is no longer a full occultation"));
    }
    let top = cherry_extend(g, &outer, &grown, x)?;
    if !top.is_full_occultation(g, o) {
        return Err(rejected("top extension is not o-invaded"));
    }
    Ok(top)
}

pub fn interrupted_to_occultation(g: &Graph, a: &OrderedAsterism, c: usize, o: usize, s: usize) -> Result<Extraction, ExtractionError> {
    pre(c >= 1 && o >= 1, || "c and o must be positive".into())?;
    let r = power(s, c).ok_or_else(|| ExtractionError::Precondition("s^c overflows".into()))?;
    pre(a.s() >= r, || format!("need {r} S-vertices, have {}", a.s()))?;
    let a = a.prefix(r);
    a.validate(g).map_err(|e| ExtractionError::Precondition(format!("not an asterism: {e}")))?;
    pre(a.is_d_ample(g, 2), || "asterism is not 2-ample".into())?;
    pre(a.is_interrupted(g), || "asterism is not interrupted".into())?;
    let mut trace = Vec::new();
    let outcome = solve(g, &a, c, o, s, &mut trace)?;
    match &outcome {
        ExtractionOutcome::FullOccultation { witness, .. } => {
            let fits = witness.s() == s && witness.order.iter().all(|v| a.order.contains(v)) && a.locate_subpath(&witness.path).is_ok();
            if !fits || witness.validate(g).is_err() || !witness.is_full_occultation(g, o) {
                return Err(rejected("returned occultation does not check"));
            }
        }
        ExtractionOutcome::CyclePacking { cycles } => {
            if cycles.len() != c {
                return Err(rejected(format!("{} cycles for c = {c}", cycles.len())));
            }
            verify_cycle_packing(g, cycles, c, o).map_err(rejected)?;
        }
        ExtractionOutcome::Insufficient { .. } => {}
        other => return Err(rejected(format!("unexpected outcome {other:?}"))),
    }
    Ok(Extraction { outcome, trace })
}

fn power(s: usize, c: usize) -> Option<usize> {
    s.checked_pow(u32::try_from(c).ok()?)
}

/// `a` has exactly `s^c` S-vertices here.
fn solve(g: &Graph, a: &OrderedAsterism, c: usize, o: usize, s: usize, trace: &mut Vec<Step>) -> Result<ExtractionOutcome, ExtractionError> {
    if s <= 1 {
        trace.push(Step::Immediate { s, c });
        return Ok(ExtractionOutcome::FullOccultation { witness: a.clone(), o });
    }
    let r = a.s();
    let r_prime = power(s - 1, c).expect("smaller than s^c");
    let x = a.order[r - 1];
    let lay = a.layout(g);
    let missed = lay.piece_spans(|k| k < r_prime).into_iter().find(|&(p, q, open)| !open && q - p >= o && !lay.meets(r - 1, p, q));

    let Some((p, q, _)) = missed else {
        trace.push(Step::Descend { s, c, r, r_prime });
        return match solve(g, &a.prefix(r_prime), c, o, s - 1, trace)? {
            ExtractionOutcome::FullOccultation { witness, .. } => {
                let top = occultation_top(g, a, r, r_prime, o, &witness)?;
                trace.push(Step::ExtendAndTop { top: x, path_before: witness.path.len(), path_after: top.path.len() });
                Ok(ExtractionOutcome::FullOccultation { witness: top, o })
            }
            other => Ok(other),
        };
    };

    // every long closed piece the top vertex misses gives a cycle; for
    // c > 1 try them (and the routes into them) in order until one leaves
    // room for the smaller asterism
    let pieces: Vec<(usize, usize)> = std::iter::once((p, q))
        .chain(lay.piece_spans(|k| k < r_prime).into_iter().filter(|&(p2, q2, open)| !open && q2 - p2 >= o && p2 > p && !lay.meets(r - 1, p2, q2)).map(|(p2, q2, _)| (p2, q2)))
        .collect();
    let m = power(s, c - 1).expect("smaller than s^c");
    let mut first_failure = None;
    for (p, q) in pieces {
        let zi = *lay.marks[p].iter().find(|&&k| k < r_prime && lay.marks[q].contains(&k)).expect("closed piece has a common neighbour");
        let z = a.order[zi];
        let piece = a.path[p..=q].to_vec();
        trace.push(Step::MissedPiece { s, c, top: x, z, piece: piece.clone() });
        let mut h = vec![z];
        h.extend_from_slice(&piece);
        let h = CycleWitness(h);
        if c == 1 {
            return Ok(ExtractionOutcome::CyclePacking { cycles: vec![h] });
        }
        for route in routes(&lay.spots[r_prime], &lay.spots[zi], p, q) {
            match carve(g, a, r_prime, zi, route, (p, q), m) {
                Ok((step, sub)) => {
                    trace.push(step);
                    return Ok(match solve(g, &sub, c - 1, o, s, trace)? {
                        ExtractionOutcome::CyclePacking { cycles } => {
                            let mut all = vec![h];
                            all.extend(cycles);
                            ExtractionOutcome::CyclePacking { cycles: all }
                        }
                        other => other,
                    });
                }
                Err(why) => {
                    first_failure.get_or_insert(why);
                }
            }
        }
    }
    Ok(stuck(trace, first_failure.unwrap_or_else(|| format!("no route from {} to a missed piece", a.order[r_prime]))))
}

/// The smaller asterism for one route `(lo, hi, y at lo)` from
/// `y = π(r'+1)` to `z`: the trimmed route interior, with the last `m`
/// vertices above `y` whose neighbours avoid its ends.
fn carve(
    g: &Graph,
    a: &OrderedAsterism,
    yi: usize,
    zi: usize,
    (lo, hi, y_low): (usize, usize, bool),
    (p, q): (usize, usize),
    m: usize,
) -> Result<(Step, OrderedAsterism), String> {
    let (y, z) = (a.order[yi], a.order[zi]);
    let inner = &a.path[lo..=hi];
    let mut route = vec![y];
    if y_low {
        route.extend_from_slice(inner);
    } else {
        route.extend(inner.iter().rev());
    }
    route.push(z);
    let z_end = if y_low { hi } else { lo };
    let extra = usize::from((p..=q).contains(&z_end));
    let (from, to) = if y_low { (lo + 1, hi.saturating_sub(1 + extra)) } else { (lo + 1 + extra, hi.saturating_sub(1)) };
    if to < from + 2 {
        return Err(format!("route {lo}..{hi} is too short to carve a path"));
    }
    let path = a.path[from..=to].to_vec();
    let ends = [path[0], *path.last().unwrap()];
    let mut order: Vec<Vertex> = a.order[yi + 1..].iter().rev().copied().filter(|&v| !ends.iter().any(|&e| g.has_edge(v, e))).take(m).collect();
    order.reverse();
    if order.len() < m {
        return Err(format!("only {} of the top vertices avoid the ends of the carved path, need {m}", order.len()));
    }
    let sub = OrderedAsterism::new(order.clone(), path.clone());
    if let Err(e) = sub.validate(g) {
        return Err(format!("carved pair is not an asterism: {e}"));
    }
    if !(sub.is_d_ample(g, 2) && sub.is_interrupted(g)) {
        return Err("carved asterism is not 2-ample and interrupted".into());
    }
    Ok((Step::Carve { y, z, route: PathWitness(route), order, path }, sub))
}

fn stuck(trace: &mut Vec<Step>, reason: String) -> ExtractionOutcome {
    trace.push(Step::Stuck { reason: reason.clone() });
    ExtractionOutcome::Insufficient { reason }
}

/// The `y`–`z` routes as `(lo, hi, y at lo)`, from consecutive spots of
/// the two vertices. Routes whose `z` end avoids the piece `p..=q` come
/// first, then shorter ones, then those further left.
fn routes(ys: &[usize], zs: &[usize], p: usize, q: usize) -> Vec<(usize, usize, bool)> {
    let mut all: Vec<(usize, bool)> = ys.iter().map(|&k| (k, true)).chain(zs.iter().map(|&k| (k, false))).collect();
    all.sort_unstable();
    let mut out: Vec<(usize, usize, bool)> = all.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| (w[0].0, w[1].0, w[0].1)).collect();
    out.sort_by_key(|&(lo, hi, y_low)| {
        let z_end = if y_low { hi } else { lo };
        ((p..=q).contains(&z_end), hi - lo, lo)
    });
    out
}
