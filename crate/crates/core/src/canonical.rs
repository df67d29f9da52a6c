//! Reduction of raw decorated graphs to canonical form with a tracked sign.
//!
//! The allowed relabelings form a finite group: cyclic rotations of the
//! external labels (circle only), permutations of the internal labels (signed
//! in odd parity, unsigned in even), per-edge orientation reversals and loop
//! half-edge swaps (odd, each -1), and edge-label permutations (even, signed).
//! The canonical representative is the lexicographically minimal encoding
//! over the whole group; a class is zero exactly when some encoding is
//! reachable with both signs.

use crate::error::GraphError;
use crate::graph::{
    permutation_sign, Backbone, CanonicalGraph, Edge, Parity, RawEdge, RawGraph, Sign, SignedGraph,
};
use itertools::Itertools;
use std::collections::BTreeMap;

/// Reduce a raw graph modulo the decoration relations.
///
/// Forbidden features (double lines, internal loops) yield `Zero`; structural
/// defects (bad labels, valences, detached components) are errors.
pub fn canonicalize(raw: &RawGraph) -> Result<SignedGraph, GraphError> {
    raw.validate()?;
    if raw.has_forbidden_feature() {
        return Ok(SignedGraph::Zero);
    }
    let mut best: Option<(Vec<Edge>, Sign)> = None;
    let mut seen: BTreeMap<Vec<Edge>, Sign> = BTreeMap::new();
    for (encoding, sign) in orbit(raw) {
        if let Some(prev) = seen.insert(encoding.clone(), sign) {
            if prev != sign {
                return Ok(SignedGraph::Zero);
            }
        }
        match &best {
            Some((enc, _)) if *enc <= encoding => {}
            _ => best = Some((encoding, sign)),
        }
    }
    let (edges, sign) = best.expect("orbit is never empty");
    Ok(SignedGraph::NonZero(
        sign,
        CanonicalGraph {
            backbone: raw.backbone,
            parity: raw.parity,
            v_e: raw.v_e,
            v_i: raw.v_i,
            edges,
        },
    ))
}

/// All coset-minimal encodings of `raw` under the relabeling group, with the
/// sign relating each to the input. Orientation reversals and half-edge swaps
/// are resolved minimally per edge inside each (rotation, permutation) coset.
fn orbit(raw: &RawGraph) -> impl Iterator<Item = (Vec<Edge>, Sign)> + '_ {
    let rotations = match raw.backbone {
        Backbone::Circle if raw.v_e > 0 => raw.v_e,
        _ => 1,
    };
    let v_i = raw.v_i as usize;
    let perms: Vec<Vec<u32>> = (0..v_i as u32).permutations(v_i).collect();
    (0..rotations).flat_map(move |r| {
        let rot_sign = Sign::from_parity_of(u64::from(r) * u64::from(raw.v_e.saturating_sub(1)));
        perms.clone().into_iter().map(move |perm| {
            let perm_sign = match raw.parity {
                Parity::Odd => permutation_sign(&perm),
                Parity::Even => Sign::Plus,
            };
            let map = |v: u32| -> u32 {
                if v <= raw.v_e {
                    (v - 1 + r) % raw.v_e + 1
                } else {
                    raw.v_e + perm[(v - raw.v_e - 1) as usize] + 1
                }
            };
            let mut sign = rot_sign * perm_sign;
            match raw.parity {
                Parity::Odd => {
                    let mut edges: Vec<Edge> = Vec::with_capacity(raw.edges.len());
                    for e in &raw.edges {
                        let RawEdge::Oriented { src, dst, half_swap } = e else {
                            unreachable!("validated odd graph")
                        };
                        let (ms, md) = (map(*src), map(*dst));
                        if ms == md {
                            if half_swap.unwrap_or(false) {
                                sign = sign.flip();
                            }
                            edges.push(Edge { u: ms, v: ms });
                        } else if ms <= md {
                            edges.push(Edge { u: ms, v: md });
                        } else {
                            sign = sign.flip();
                            edges.push(Edge { u: md, v: ms });
                        }
                    }
                    edges.sort_unstable();
                    (edges, sign)
                }
                Parity::Even => {
                    let mut labeled: Vec<(Edge, u32)> = raw
                        .edges
                        .iter()
                        .map(|e| {
                            let RawEdge::Labeled { label, a, b } = e else {
                                unreachable!("validated even graph")
                            };
                            let (ma, mb) = (map(*a), map(*b));
                            (Edge { u: ma.min(mb), v: ma.max(mb) }, *label)
                        })
                        .collect();
                    labeled.sort_unstable();
                    let order: Vec<u32> = labeled.iter().map(|&(_, l)| l).collect();
                    sign *= permutation_sign(&order);
                    (labeled.into_iter().map(|(e, _)| e).collect(), sign)
                }
            }
        })
    })
}

/// A relabeling from the allowed symmetry group, kept explicit so tests can
/// apply one and compare the predicted sign against `canonicalize`.
#[derive(Debug, Clone)]
pub enum Symmetry {
    Odd {
        rotation: u32,
        internal: Vec<u32>,
        reversals: Vec<bool>,
        swaps: Vec<bool>,
    },
    Even {
        rotation: u32,
        internal: Vec<u32>,
        labels: Vec<u32>,
    },
}

impl Symmetry {
    pub fn sign(&self, g: &CanonicalGraph) -> Sign {
        let rot = |r: u32| Sign::from_parity_of(u64::from(r) * u64::from(g.v_e.saturating_sub(1)));
        match self {
            Symmetry::Odd { rotation, internal, reversals, swaps } => {
                let twists = reversals.iter().chain(swaps).filter(|&&b| b).count();
                rot(*rotation) * permutation_sign(internal) * Sign::from_parity_of(twists as u64)
            }
            Symmetry::Even { rotation, internal: _, labels } => {
                rot(*rotation) * permutation_sign(labels)
            }
        }
    }
}

/// Draw a random allowed relabeling of `g`.
pub fn random_symmetry<R: rand::Rng>(g: &CanonicalGraph, rng: &mut R) -> Symmetry {
    let rotation = if g.backbone == Backbone::Circle && g.v_e > 0 {
        rng.gen_range(0..g.v_e)
    } else {
        0
    };
    let mut internal: Vec<u32> = (0..g.v_i).collect();
    shuffle(&mut internal, rng);
    match g.parity {
        Parity::Odd => Symmetry::Odd {
            rotation,
            internal,
            reversals: g.edges.iter().map(|e| e.u != e.v && rng.gen()).collect(),
            swaps: g.edges.iter().map(|e| e.u == e.v && rng.gen()).collect(),
        },
        Parity::Even => {
            let mut labels: Vec<u32> = (1..=g.edge_count()).collect();
            shuffle(&mut labels, rng);
            Symmetry::Even { rotation, internal, labels }
        }
    }
}

fn shuffle<R: rand::Rng>(xs: &mut [u32], rng: &mut R) {
    for i in (1..xs.len()).rev() {
        xs.swap(i, rng.gen_range(0..=i));
    }
}

/// Apply a relabeling to a canonical graph, producing the raw graph a user
/// could have written down. `canonicalize` of the result must return the
/// original graph with `sym.sign(g)`.
pub fn apply_symmetry(g: &CanonicalGraph, sym: &Symmetry) -> RawGraph {
    let (rotation, internal) = match sym {
        Symmetry::Odd { rotation, internal, .. } | Symmetry::Even { rotation, internal, .. } => {
            (*rotation, internal)
        }
    };
    let map = |v: u32| -> u32 {
        if v <= g.v_e {
            (v - 1 + rotation) % g.v_e + 1
        } else {
            g.v_e + internal[(v - g.v_e - 1) as usize] + 1
        }
    };
    let edges = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| match sym {
            Symmetry::Odd { reversals, swaps, .. } => {
                let (mut s, mut d) = (map(e.u), map(e.v));
                if reversals[i] {
                    std::mem::swap(&mut s, &mut d);
                }
                RawEdge::Oriented {
                    src: s,
                    dst: d,
                    half_swap: if s == d { Some(swaps[i]) } else { None },
                }
            }
            Symmetry::Even { labels, .. } => RawEdge::Labeled {
                label: labels[i],
                a: map(e.u),
                b: map(e.v),
            },
        })
        .collect();
    RawGraph {
        backbone: g.backbone,
        parity: g.parity,
        v_e: g.v_e,
        v_i: g.v_i,
        edges,
    }
}

/// Independent zero test by exhaustive automorphism search: the class is zero
/// iff some allowed relabeling maps the graph onto itself with sign -1.
pub fn is_zero_by_automorphism(raw: &RawGraph) -> Result<bool, GraphError> {
    raw.validate()?;
    if raw.has_forbidden_feature() {
        return Ok(true);
    }
    let rotations = match raw.backbone {
        Backbone::Circle if raw.v_e > 0 => raw.v_e,
        _ => 1,
    };
    let v_i = raw.v_i as usize;
    let reference: Vec<(u32, u32)> = raw
        .edges
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            (a.min(b), a.max(b))
        })
        .collect();
    for r in 0..rotations {
        let rot_sign = Sign::from_parity_of(u64::from(r) * u64::from(raw.v_e.saturating_sub(1)));
        for perm in (0..v_i as u32).permutations(v_i) {
            let map = |v: u32| -> u32 {
                if v <= raw.v_e {
                    (v - 1 + r) % raw.v_e + 1
                } else {
                    raw.v_e + perm[(v - raw.v_e - 1) as usize] + 1
                }
            };
            let mut sign = rot_sign;
            if raw.parity == Parity::Odd {
                sign *= permutation_sign(&perm);
            }
            let mut fixes = true;
            let mut label_images: Vec<u32> = vec![0; raw.edges.len()];
            for edge in &raw.edges {
                let (a, b) = edge.endpoints();
                let (ma, mb) = (map(a), map(b));
                let pair = (ma.min(mb), ma.max(mb));
                // pairs are distinct once forbidden features are excluded
                let Some(target) = reference.iter().position(|&p| p == pair) else {
                    fixes = false;
                    break;
                };
                match (edge, &raw.edges[target]) {
                    (
                        RawEdge::Oriented { src, half_swap, .. },
                        RawEdge::Oriented { src: tsrc, half_swap: tswap, .. },
                    ) => {
                        if pair.0 == pair.1 {
                            if half_swap != tswap {
                                sign = sign.flip();
                            }
                        } else if map(*src) != *tsrc {
                            sign = sign.flip();
                        }
                    }
                    (RawEdge::Labeled { label, .. }, RawEdge::Labeled { label: tlabel, .. }) => {
                        label_images[(*label - 1) as usize] = *tlabel;
                    }
                    _ => unreachable!("parity is uniform"),
                }
            }
            if !fixes {
                continue;
            }
            if raw.parity == Parity::Even {
                sign *= permutation_sign(&label_images);
            }
            if sign == Sign::Minus {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Backbone::*;
    use crate::graph::Parity::*;

    fn raw(backbone: Backbone, parity: Parity, v_e: u32, v_i: u32, edges: Vec<RawEdge>) -> RawGraph {
        RawGraph { backbone, parity, v_e, v_i, edges }
    }

    fn oriented(src: u32, dst: u32) -> RawEdge {
        RawEdge::Oriented { src, dst, half_swap: None }
    }

    fn odd_loop(v: u32, swap: bool) -> RawEdge {
        RawEdge::Oriented { src: v, dst: v, half_swap: Some(swap) }
    }

    fn labeled(label: u32, a: u32, b: u32) -> RawEdge {
        RawEdge::Labeled { label, a, b }
    }

    fn expect_nonzero(g: &RawGraph) -> (Sign, CanonicalGraph) {
        match canonicalize(g).unwrap() {
            SignedGraph::NonZero(s, c) => (s, c),
            SignedGraph::Zero => panic!("unexpected zero class for {g:?}"),
        }
    }

    #[test]
    fn odd_chord_reversal_gives_minus() {
        let fwd = raw(Circle, Odd, 2, 0, vec![oriented(1, 2)]);
        let rev = raw(Circle, Odd, 2, 0, vec![oriented(2, 1)]);
        let (s1, c1) = expect_nonzero(&fwd);
        let (s2, c2) = expect_nonzero(&rev);
        assert_eq!(c1, c2);
        assert_eq!(s1, Sign::Plus);
        assert_eq!(s2, Sign::Minus);
    }

    #[test]
    fn double_line_is_zero() {
        let g = raw(Circle, Odd, 2, 0, vec![oriented(1, 2), oriented(2, 1)]);
        assert!(canonicalize(&g).unwrap().is_zero());
    }

    #[test]
    fn even_single_chord_on_circle_is_zero() {
        // the transposition of the two external labels fixes the edge set
        // with sign -1, so the class dies
        let g = raw(Circle, Even, 2, 0, vec![labeled(1, 1, 2)]);
        assert!(canonicalize(&g).unwrap().is_zero());
        assert!(is_zero_by_automorphism(&g).unwrap());
    }

    #[test]
    fn even_single_chord_on_line_is_nonzero() {
        let g = raw(Line, Even, 2, 0, vec![labeled(1, 1, 2)]);
        let (s, c) = expect_nonzero(&g);
        assert_eq!(s, Sign::Plus);
        assert_eq!(c.edges, vec![Edge { u: 1, v: 2 }]);
    }

    #[test]
    fn even_parallel_chords_on_circle_are_zero() {
        // chords {1,2} and {3,4}: rotation by two swaps the edge labels
        let g = raw(Circle, Even, 4, 0, vec![labeled(1, 1, 2), labeled(2, 3, 4)]);
        assert!(canonicalize(&g).unwrap().is_zero());
        assert!(is_zero_by_automorphism(&g).unwrap());
    }

    #[test]
    fn even_crossing_chords_nonzero_and_label_swap_flips_sign() {
        let a = raw(Circle, Even, 4, 0, vec![labeled(1, 1, 3), labeled(2, 2, 4)]);
        let b = raw(Circle, Even, 4, 0, vec![labeled(2, 1, 3), labeled(1, 2, 4)]);
        let (sa, ca) = expect_nonzero(&a);
        let (sb, cb) = expect_nonzero(&b);
        assert_eq!(ca, cb);
        assert_eq!(sa * sb, Sign::Minus);
    }

    #[test]
    fn even_tripod_is_canonical() {
        let g = raw(Circle, Even, 3, 1, vec![labeled(1, 1, 4), labeled(2, 2, 4), labeled(3, 3, 4)]);
        let (s, c) = expect_nonzero(&g);
        assert_eq!(s, Sign::Plus);
        assert_eq!(
            c.edges,
            vec![Edge { u: 1, v: 4 }, Edge { u: 2, v: 4 }, Edge { u: 3, v: 4 }]
        );
    }

    #[test]
    fn odd_loop_half_swap_flips_sign() {
        let plain = raw(Circle, Odd, 1, 0, vec![odd_loop(1, false)]);
        let swapped = raw(Circle, Odd, 1, 0, vec![odd_loop(1, true)]);
        let (s1, c1) = expect_nonzero(&plain);
        let (s2, c2) = expect_nonzero(&swapped);
        assert_eq!(c1, c2);
        assert_eq!(s1 * s2, Sign::Minus);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let g = raw(Circle, Odd, 3, 1, vec![oriented(1, 4), oriented(2, 4), oriented(3, 4)]);
        let (_, c) = expect_nonzero(&g);
        let again = expect_nonzero(&c.to_raw());
        assert_eq!(again, (Sign::Plus, c));
    }

    #[test]
    fn rotation_sign_matches_prediction() {
        // crossing chords: rotating by one costs two transpositions overall
        let x = raw(Circle, Even, 4, 0, vec![labeled(1, 1, 3), labeled(2, 2, 4)]);
        let (_, c) = expect_nonzero(&x);
        let sym = Symmetry::Even { rotation: 1, internal: vec![], labels: vec![1, 2] };
        let rotated = apply_symmetry(&c, &sym);
        let (s, c2) = expect_nonzero(&rotated);
        assert_eq!(c2, c);
        assert_eq!(s, sym.sign(&c));
    }

    #[test]
    fn unit_graph_is_canonical() {
        let unit = raw(Circle, Even, 0, 0, vec![]);
        let (s, c) = expect_nonzero(&unit);
        assert_eq!(s, Sign::Plus);
        assert!(c.is_unit());
    }

    #[test]
    fn brute_force_agrees_on_small_classes() {
        let cases = vec![
            raw(Circle, Odd, 2, 0, vec![oriented(1, 2)]),
            raw(Circle, Even, 4, 0, vec![labeled(1, 1, 3), labeled(2, 2, 4)]),
            raw(Circle, Even, 4, 0, vec![labeled(1, 1, 2), labeled(2, 3, 4)]),
            raw(Circle, Odd, 1, 0, vec![odd_loop(1, false)]),
        ];
        for g in cases {
            let by_canon = canonicalize(&g).unwrap().is_zero();
            let by_auto = is_zero_by_automorphism(&g).unwrap();
            assert_eq!(by_canon, by_auto, "disagree on {g:?}");
        }
    }
}
