//! Decorated graphs on a circle or line backbone.
//!
//! External vertices sit on the backbone and are labeled 1..=v_e in backbone
//! order; internal vertices are labeled v_e+1..=v_e+v_i and must be at least
//! trivalent. Odd parity orients every edge and orders the two half-edges of
//! an external loop; even parity labels the edges 1..=e instead.

use crate::error::GraphError;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backbone {
    Circle,
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Backbone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backbone::Circle => "circle",
            Backbone::Line => "line",
        })
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Sign carried through relabelings and contractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity_of(n: u64) -> Self {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

/// Sign of a permutation given in one-line form over any label set.
pub fn permutation_sign(images: &[u32]) -> Sign {
    let mut inv = 0u64;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inv += 1;
            }
        }
    }
    Sign::from_parity_of(inv)
}

/// Raw edge record before canonicalization.
///
/// `Oriented` is the odd decoration (src -> dst plus, for external loops, a
/// formal order of the two half-edges); `Labeled` is the even one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawEdge {
    Oriented {
        src: u32,
        dst: u32,
        /// Half-edge order of an external loop; `false` is the reference
        /// order, `true` the swapped one. Required iff src == dst.
        half_swap: Option<bool>,
    },
    Labeled {
        label: u32,
        a: u32,
        b: u32,
    },
}

impl RawEdge {
    pub fn endpoints(&self) -> (u32, u32) {
        match *self {
            RawEdge::Oriented { src, dst, .. } => (src, dst),
            RawEdge::Labeled { a, b, .. } => (a, b),
        }
    }
}

/// A decorated graph as supplied by parsers and constructors.
///
/// External labels are backbone positions by convention; the symmetry
/// relations (rotations, internal permutations, orientation reversals,
/// half-edge swaps, edge-label permutations) are applied by `canonicalize`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    pub backbone: Backbone,
    pub parity: Parity,
    pub v_e: u32,
    pub v_i: u32,
    pub edges: Vec<RawEdge>,
}

impl RawGraph {
    pub fn vertex_count(&self) -> u32 {
        self.v_e + self.v_i
    }

    pub fn is_external(&self, v: u32) -> bool {
        v >= 1 && v <= self.v_e
    }

    /// Structural validation: label ranges, decoration shape, valences and
    /// backbone attachment. Double lines and internal loops are *not* checked
    /// here; they are quotient relations handled by `canonicalize`.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.vertex_count();
        let mut valence = vec![0u32; n as usize + 1];
        let mut labels_seen = vec![false; self.edges.len() + 1];
        for (index, edge) in self.edges.iter().enumerate() {
            let (a, b) = edge.endpoints();
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        v_e: self.v_e,
                        v_i: self.v_i,
                    });
                }
                valence[v as usize] += 1;
            }
            match (*edge).clone() {
                RawEdge::Oriented { src, dst, half_swap } => {
                    if self.parity != Parity::Odd {
                        return Err(GraphError::EdgeParityMismatch { index });
                    }
                    let is_external_loop = src == dst && self.is_external(src);
                    if is_external_loop && half_swap.is_none() {
                        return Err(GraphError::MissingHalfOrder { index });
                    }
                    if !is_external_loop && half_swap.is_some() {
                        return Err(GraphError::UnexpectedHalfOrder { index });
                    }
                }
                RawEdge::Labeled { label, .. } => {
                    if self.parity != Parity::Even {
                        return Err(GraphError::EdgeParityMismatch { index });
                    }
                    let e = self.edges.len() as u32;
                    if label < 1 || label > e || labels_seen[label as usize] {
                        return Err(GraphError::BadEdgeLabels { label, expected: e });
                    }
                    labels_seen[label as usize] = true;
                }
            }
        }
        for v in 1..=self.v_e {
            if valence[v as usize] == 0 {
                return Err(GraphError::IsolatedExternal { vertex: v });
            }
        }
        for v in self.v_e + 1..=n {
            if valence[v as usize] < 3 {
                return Err(GraphError::InternalValence {
                    vertex: v,
                    valence: valence[v as usize],
                });
            }
        }
        self.check_components()
    }

    /// Every connected component of the graph minus the backbone must contain
    /// an external vertex.
    fn check_components(&self) -> Result<(), GraphError> {
        let n = self.vertex_count() as usize;
        let mut dsu: Vec<usize> = (0..=n).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        for edge in &self.edges {
            let (a, b) = edge.endpoints();
            let (ra, rb) = (find(&mut dsu, a as usize), find(&mut dsu, b as usize));
            dsu[ra] = rb;
        }
        for v in self.v_e + 1..=self.v_e + self.v_i {
            let root = find(&mut dsu, v as usize);
            let touches = (1..=self.v_e).any(|e| find(&mut dsu, e as usize) == root);
            if !touches {
                return Err(GraphError::DetachedComponent { vertex: v });
            }
        }
        Ok(())
    }

    /// True if two edges join the same unordered vertex pair, or an edge
    /// starts and ends at the same internal vertex. Such graphs are zero.
    pub fn has_forbidden_feature(&self) -> bool {
        let mut pairs: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return true;
        }
        pairs.iter().any(|&(a, b)| a == b && !self.is_external(a))
    }
}

/// Gradings of a decorated graph: order k, degree m and the label degree for
/// which the differential has degree -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub k: u32,
    pub m: u32,
    pub label_degree: u32,
}

pub(crate) fn grading_of(parity: Parity, v_e: u32, v_i: u32, e: u32) -> Grading {
    debug_assert!(e >= v_i, "order must be non-negative");
    debug_assert!(2 * e >= v_e + 3 * v_i, "degree must be non-negative");
    let label_degree = match parity {
        Parity::Even => e + v_e,
        Parity::Odd => v_e + v_i,
    };
    Grading {
        k: e - v_i,
        m: 2 * e - v_e - 3 * v_i,
        label_degree,
    }
}

/// Order, degree and label degree of a valid raw graph.
pub fn grading(g: &RawGraph) -> Result<Grading, GraphError> {
    g.validate()?;
    Ok(grading_of(g.parity, g.v_e, g.v_i, g.edges.len() as u32))
}

/// Canonical edge record with `u <= v`. Odd chords are oriented u -> v and
/// odd loops carry the reference half-edge order; the reversed variants are
/// minus the canonical graph, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
}

/// A decorated graph in canonical form: the lexicographically minimal
/// encoding over all allowed relabelings. Only `canonicalize` builds these.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalGraph {
    pub backbone: Backbone,
    pub parity: Parity,
    pub v_e: u32,
    pub v_i: u32,
    pub edges: Vec<Edge>,
}

impl CanonicalGraph {
    /// The unit: the empty graph on the given backbone.
    pub fn unit(backbone: Backbone, parity: Parity) -> Self {
        CanonicalGraph {
            backbone,
            parity,
            v_e: 0,
            v_i: 0,
            edges: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.v_e == 0 && self.edges.is_empty()
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn grading(&self) -> Grading {
        grading_of(self.parity, self.v_e, self.v_i, self.edge_count())
    }

    pub fn is_external(&self, v: u32) -> bool {
        v >= 1 && v <= self.v_e
    }

    /// An edge is regular iff at least one endpoint is internal.
    pub fn is_regular(&self, index: usize) -> bool {
        let e = &self.edges[index];
        !self.is_external(e.u) || !self.is_external(e.v)
    }

    pub fn to_raw(&self) -> RawGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| match self.parity {
                Parity::Odd => RawEdge::Oriented {
                    src: e.u,
                    dst: e.v,
                    half_swap: if e.u == e.v { Some(false) } else { None },
                },
                Parity::Even => RawEdge::Labeled {
                    label: i as u32 + 1,
                    a: e.u,
                    b: e.v,
                },
            })
            .collect();
        RawGraph {
            backbone: self.backbone,
            parity: self.parity,
            v_e: self.v_e,
            v_i: self.v_i,
            edges,
        }
    }
}

/// Result of reducing a raw graph modulo the decoration relations: either the
/// class is zero, or a canonical representative with a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedGraph {
    Zero,
    NonZero(Sign, CanonicalGraph),
}

impl SignedGraph {
    pub fn is_zero(&self) -> bool {
        matches!(self, SignedGraph::Zero)
    }

    pub fn map_sign(self, s: Sign) -> SignedGraph {
        match self {
            SignedGraph::Zero => SignedGraph::Zero,
            SignedGraph::NonZero(sign, g) => SignedGraph::NonZero(sign * s, g),
        }
    }
}
