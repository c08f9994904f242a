//! Named families and closed forms: balloon graphs and their two-terminal
//! versions, the contraction/subdivision variants, threshold graphs with
//! their product formula for spanning trees, and the extremal values
//! `b(n,m)` (bridges) and `λ(n,m)` (edge connectivity).

use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TwoTerminalGraph};
use crate::poly::ExactPolynomial;
use crate::signature::{reliability_polynomial, sr_polynomial, SplitSignature};

pub fn choose(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        binomial(n, k)
    }
}

fn big_choose(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

/// A pair `(n, m)` with the index-set predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassIndex {
    pub n: usize,
    pub m: usize,
}

impl ClassIndex {
    pub fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }

    /// `n >= 4` and `n <= m <= C(n,2)`.
    pub fn in_i(&self) -> bool {
        self.n >= 4 && self.n <= self.m && self.m <= choose(self.n, 2)
    }

    /// `C(n-1,2) + 2 <= m <= C(n,2)`.
    pub fn in_i0(&self) -> bool {
        self.n >= 4 && choose(self.n - 1, 2) + 2 <= self.m && self.m <= choose(self.n, 2)
    }

    pub fn in_i1(&self) -> bool {
        self.in_i() && !self.in_i0()
    }

    /// Tree classes `m = n - 1`.
    pub fn is_tree_class(&self) -> bool {
        self.n >= 2 && self.m + 1 == self.n
    }

    pub fn require_i(&self) -> Result<()> {
        if self.in_i() {
            Ok(())
        } else {
            Err(Error::OutOfClass {
                n: self.n,
                m: self.m,
                set: "I",
            })
        }
    }

    pub fn require_i1(&self) -> Result<()> {
        if self.in_i1() {
            Ok(())
        } else {
            Err(Error::OutOfClass {
                n: self.n,
                m: self.m,
                set: "I_1",
            })
        }
    }

    /// Every `(n, m)` of `I` with `n` in the given range, by `n` then `m`.
    pub fn all_in_i(ns: std::ops::RangeInclusive<usize>) -> Vec<ClassIndex> {
        ns.flat_map(|n| (n..=choose(n, 2)).map(move |m| ClassIndex::new(n, m)))
            .filter(ClassIndex::in_i)
            .collect()
    }
}

impl fmt::Display for ClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.m)
    }
}

/// `H(n; d_1, ..., d_k)`: independent vertices `0..k`, a clique on `k..n`,
/// and vertex `i < k` adjacent to `k, ..., k + d_i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdSpec {
    pub n: usize,
    pub degrees: Vec<usize>,
}

impl ThresholdSpec {
    pub fn new(n: usize, degrees: Vec<usize>) -> Result<Self> {
        let spec = Self { n, degrees };
        spec.validate()?;
        Ok(spec)
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k >= self.n {
            return Err(Error::Precondition(format!(
                "{k} independent vertices leave no clique among {} vertices",
                self.n
            )));
        }
        if self.degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition("degrees must be nonincreasing".into()));
        }
        if let Some(&d) = self.degrees.iter().find(|&&d| d < 1 || d > self.n - k) {
            return Err(Error::Precondition(format!(
                "degree {d} outside 1..={}",
                self.n - k
            )));
        }
        Ok(())
    }
}

pub fn threshold_graph(spec: &ThresholdSpec) -> Result<SimpleGraph> {
    spec.validate()?;
    let (n, k) = (spec.n, spec.k());
    let clique = (k..n).flat_map(|v| (k..v).map(move |u| (u, v)));
    let spokes = spec
        .degrees
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| (k..k + d).map(move |v| (i, v)));
    SimpleGraph::new(n, clique.chain(spokes).collect::<Vec<_>>())
}

/// `(n-k)^-2 · Π_{i=0..k} d_i (n-k+i)^(d_i - d_{i+1})` with `d_0 = n - k`
/// and `d_{k+1} = 1`.
pub fn bogdanowicz_tree_count(spec: &ThresholdSpec) -> Result<BigUint> {
    spec.validate()?;
    let (n, k) = (spec.n, spec.k());
    let mut d = Vec::with_capacity(k + 2);
    d.push(n - k);
    d.extend(&spec.degrees);
    d.push(1);
    let mut product = BigUint::one();
    for i in 0..=k {
        product *= BigUint::from(d[i]) * BigUint::from(n - k + i).pow((d[i] - d[i + 1]) as u32);
    }
    let denom = BigUint::from(n - k).pow(2);
    debug_assert!((&product % &denom).is_zero());
    Ok(product / denom)
}

/// `B_{n,m}`. In the dense case the extra vertex `n-1` joins the lowest
/// indexed clique vertices; otherwise vertex `n-1` hangs on the lowest
/// indexed minimum-degree vertex of `B_{n-1,m-1}`.
pub fn balloon(n: usize, m: usize) -> Result<SimpleGraph> {
    ClassIndex::new(n, m).require_i()?;
    Ok(balloon_unchecked(n, m))
}

fn balloon_unchecked(n: usize, m: usize) -> SimpleGraph {
    let class = ClassIndex::new(n, m);
    if class.in_i0() {
        let lambda = m - choose(n - 1, 2);
        let edges = SimpleGraph::complete(n - 1)
            .edges()
            .iter()
            .copied()
            .chain((0..lambda).map(|u| (u, n - 1)))
            .collect::<Vec<_>>();
        return SimpleGraph::new(n, edges).expect("balloon edges are simple");
    }
    if (n, m) == (4, 4) {
        return SimpleGraph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).expect("paw");
    }
    let smaller = balloon_unchecked(n - 1, m - 1);
    let degrees = smaller.degrees();
    let min = *degrees.iter().min().unwrap();
    let anchor = degrees.iter().position(|&d| d == min).unwrap();
    let edges = smaller
        .edges()
        .iter()
        .copied()
        .chain([(anchor, n - 1)])
        .collect::<Vec<_>>();
    SimpleGraph::new(n, edges).expect("balloon edges are simple")
}

/// Terminal pairs of `g` at distance equal to the diameter, as `(u, v)`
/// with `u < v`, in lexicographic order.
pub fn diametral_pairs(g: &SimpleGraph) -> Result<Vec<(usize, usize)>> {
    let diameter = g.diameter()?;
    let mut pairs = Vec::new();
    for u in 0..g.n() {
        let dist = g.distances_from(u);
        for (v, d) in dist.iter().enumerate().skip(u + 1) {
            if *d == Some(diameter) {
                pairs.push((u, v));
            }
        }
    }
    Ok(pairs)
}

/// `G_{n,m}`: the balloon with a diametral terminal pair. Among diametral
/// pairs the one with the least canonical form is taken (lexicographically
/// least pair on ties, and for graphs too large for canonical labeling). The
/// higher-indexed vertex of the pair, the end of the pendant path when there
/// is one, becomes `s`.
pub fn two_terminal_balloon(n: usize, m: usize) -> Result<TwoTerminalGraph> {
    let b = balloon(n, m)?;
    let pairs = diametral_pairs(&b)?;
    let build = |(u, v): (usize, usize)| TwoTerminalGraph::new(b.clone(), v, u);
    if n > MAX_CANON_VERTICES {
        return build(pairs[0]);
    }
    let mut best = None;
    for &pair in &pairs {
        let key = canonical_form(&build(pair)?)?;
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, pair));
        }
    }
    build(best.unwrap().1)
}

/// `b(n,m) = n - k*` where `k*` is the least `k` with `C(k,2) >= m - n + k`.
pub fn max_bridges(n: usize, m: usize) -> Result<usize> {
    ClassIndex::new(n, m).require_i()?;
    Ok(max_bridges_unchecked(n, m))
}

fn max_bridges_unchecked(n: usize, m: usize) -> usize {
    let k = (1..=n)
        .find(|&k| choose(k, 2) + n >= m + k)
        .expect("k = n always qualifies for m <= C(n,2)");
    n - k
}

/// The radical expression `n - 1 - ceil(sqrt(2(m-n+3)) - 1/2)` evaluated in
/// exact integer arithmetic: the ceiling is the least `c` with
/// `(2c+1)^2 >= 8(m-n+3)`. Kept for comparison with [`max_bridges`].
pub fn printed_max_bridges(n: usize, m: usize) -> Result<i64> {
    ClassIndex::new(n, m).require_i()?;
    let x = (m + 3 - n) as u64;
    let c = (0u64..).find(|c| (2 * c + 1).pow(2) >= 8 * x).unwrap();
    Ok(n as i64 - 1 - c as i64)
}

/// `λ(n,m)`: `m - C(n-1,2)` on `I_0`, `1` on `I_1`.
pub fn min_edge_connectivity(n: usize, m: usize) -> Result<usize> {
    let class = ClassIndex::new(n, m);
    class.require_i()?;
    Ok(if class.in_i0() {
        m - choose(n - 1, 2)
    } else {
        1
    })
}

/// Bridge count of the balloon and the size of its skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalloonProfile {
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub skeleton_n: usize,
    pub skeleton_m: usize,
    /// Minimum degree of the skeleton, `m' - C(n'-1, 2)`.
    pub skeleton_lambda: usize,
}

/// For `m = n` the skeleton is the triangle, which sits outside `I_0` only
/// because `I_0` starts at four vertices; its minimum degree 2 still follows
/// the dense formula.
pub fn balloon_profile(n: usize, m: usize) -> Result<BalloonProfile> {
    let b = max_bridges(n, m)?;
    let (skeleton_n, skeleton_m) = (n - b, m - b);
    let skeleton_lambda = skeleton_m - choose(skeleton_n - 1, 2);
    debug_assert!(
        ClassIndex::new(skeleton_n, skeleton_m).in_i0() || (skeleton_n, skeleton_m) == (3, 3)
    );
    Ok(BalloonProfile {
        n,
        m,
        b,
        skeleton_n,
        skeleton_m,
        skeleton_lambda,
    })
}

/// Predicted `F_i(G_{n,m})` for `(n,m)` in `I_1` and `1 <= i <= n' - 2`.
pub fn closed_form_f(n: usize, m: usize, i: usize) -> Result<BigUint> {
    ClassIndex::new(n, m).require_i1()?;
    let p = balloon_profile(n, m)?;
    let (b, nn, mm, lam) = (
        BigUint::from(p.b),
        p.skeleton_n,
        p.skeleton_m,
        p.skeleton_lambda,
    );
    if i < 1 || i + 2 > nn {
        return Err(Error::Precondition(format!(
            "index {i} outside 1..={} for {}",
            nn.saturating_sub(2),
            ClassIndex::new(n, m)
        )));
    }
    if i < lam {
        return Ok(&b * big_choose(mm, i - 1));
    }
    if i == lam {
        let separators = if lam + 2 >= nn { 2u32 } else { 1 };
        return Ok(&b * big_choose(mm, lam - 1) + BigUint::from(separators));
    }
    let bridge_sum: BigUint = (0..lam)
        .filter(|&j| i > j)
        .map(|j| big_choose(lam, j) * big_choose(mm - lam, i - j - 1))
        .sum();
    let base = big_choose(mm - lam, i - lam) + &b * bridge_sum;
    Ok(if i + 2 == nn {
        base + BigUint::one()
    } else {
        base
    })
}

/// `SR_{G_{n,m}}` assembled from the skeleton:
/// `b(1-p)p^(b-1) R_{G'}(p) + p^b SR_{G'}(p)`.
pub fn sr_composition(n: usize, m: usize) -> Result<ExactPolynomial> {
    ClassIndex::new(n, m).require_i1()?;
    let g = two_terminal_balloon(n, m)?;
    let skeleton = g
        .projected_skeleton()?
        .ok_or_else(|| Error::Precondition("terminals project to one vertex".into()))?;
    let b = max_bridges(n, m)?;
    let p = ExactPolynomial::x();
    let reliability = reliability_polynomial(skeleton.graph())?;
    let split = sr_polynomial(&SplitSignature::of(&skeleton)?);
    let count = ExactPolynomial::from_integers(&[b as i64]);
    let first = &(&(&count * &ExactPolynomial::one_minus_x()) * &p.pow(b - 1)) * &reliability;
    Ok(&first + &(&p.pow(b) * &split))
}

/// The three contraction/subdivision perturbations of `G_{n,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VariantKind {
    /// Subdivide a skeleton edge at `s'`.
    AtAnchor,
    /// Subdivide a skeleton edge whose ends are both non-neighbours of `s'`.
    Far,
    /// Subdivide a skeleton edge whose ends are both neighbours of `s'`.
    Near,
}

impl VariantKind {
    pub fn from_index(kind: u8) -> Result<Self> {
        match kind {
            0 => Ok(Self::AtAnchor),
            1 => Ok(Self::Far),
            2 => Ok(Self::Near),
            _ => Err(Error::Precondition(format!(
                "variant kind {kind} is not 0, 1 or 2"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::AtAnchor => 0,
            Self::Far => 1,
            Self::Near => 2,
        }
    }
}

/// Edge choices available to a variant, as edge indices of `G_{n,m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantChoices {
    pub base: TwoTerminalGraph,
    /// The skeleton vertex nearest to the pendant terminal.
    pub anchor: usize,
    /// All bridges, the one at the pendant end first.
    pub bridges: Vec<usize>,
    /// Eligible skeleton edges in increasing index order.
    pub edges: Vec<usize>,
}

pub fn variant_choices(kind: VariantKind, n: usize, m: usize) -> Result<VariantChoices> {
    ClassIndex::new(n, m).require_i1()?;
    let base = two_terminal_balloon(n, m)?;
    let g = base.graph();
    let mut bridges = g.bridges()?;
    let (s, _) = base.terminals();
    bridges.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (u != s && v != s, e)
    });
    let mut on_bridge = vec![0usize; g.n()];
    for &e in &bridges {
        let (u, v) = g.edges()[e];
        on_bridge[u] += 1;
        on_bridge[v] += 1;
    }
    let degrees = g.degrees();
    let (_, map) = g.skeleton()?;
    let anchor = (0..g.n())
        .find(|&v| map[v] == map[s] && degrees[v] > on_bridge[v])
        .ok_or_else(|| Error::Precondition("no skeleton vertex at the pendant terminal".into()))?;
    let adjacent = |v: usize| g.has_edge(anchor, v);
    let edges: Vec<usize> = (0..g.m())
        .filter(|e| !bridges.contains(e))
        .filter(|&e| {
            let (y, z) = g.edges()[e];
            match kind {
                VariantKind::AtAnchor => y == anchor || z == anchor,
                VariantKind::Far => y != anchor && z != anchor && !adjacent(y) && !adjacent(z),
                VariantKind::Near => adjacent(y) && adjacent(z),
            }
        })
        .collect();
    if edges.is_empty() {
        return Err(Error::Precondition(format!(
            "no edge of kind {} in G{}",
            kind.index(),
            ClassIndex::new(n, m)
        )));
    }
    Ok(VariantChoices {
        base,
        anchor,
        bridges,
        edges,
    })
}

/// Contract `bridge` of `G_{n,m}`, then subdivide the image of `edge`.
pub fn variant_with(
    choices: &VariantChoices,
    bridge: usize,
    edge: usize,
) -> Result<TwoTerminalGraph> {
    let g = choices.base.graph();
    let (y, z) = g.edge(edge)?;
    let (_, map) = g.contract_edge_with_map(bridge)?;
    let contracted = choices.base.contract_edge(bridge)?;
    let image = contracted
        .graph()
        .edge_index(map[y], map[z])
        .ok_or_else(|| Error::Precondition("edge vanished under the contraction".into()))?;
    contracted.subdivide_edge(image)
}

/// The variant built from the pendant-end bridge and the least eligible edge.
pub fn variant(kind: VariantKind, n: usize, m: usize) -> Result<TwoTerminalGraph> {
    let choices = variant_choices(kind, n, m)?;
    variant_with(&choices, choices.bridges[0], choices.edges[0])
}
