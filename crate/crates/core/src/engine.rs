//! Exact counting: split-subgraph and connected-subgraph coefficient vectors
//! by exhaustive edge-subset sweeps, spanning-tree counts by fraction-free
//! elimination of a Laplacian cofactor, two-tree split counts by vertex
//! bipartitions, and a seeded Monte Carlo estimator for cross-checks.

use std::fmt;
use std::io::Write;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsu::SmallDsu;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TwoTerminalGraph};

/// Default cap on the number of edges of a `2^m` sweep.
pub const DEFAULT_GUARD_BITS: u32 = 28;

/// Sweeps with at least this many edges are split across the rayon pool.
const PARALLEL_BITS: usize = 16;
const CHUNK_BITS: usize = 14;

/// Exact counts indexed by the number of surviving edges, `0..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    counts: Vec<BigUint>,
}

impl CoefficientVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        assert!(!counts.is_empty(), "a coefficient vector has m + 1 entries");
        Self { counts }
    }

    pub fn zeros(m: usize) -> Self {
        Self::new(vec![BigUint::zero(); m + 1])
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn m(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, i: usize) -> &BigUint {
        &self.counts[i]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coefficient vectors always serialize")
    }

    /// CSV with header `i,N_i,F_i` where `F_i = N_{m-i}`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "N_i", "F_i"])?;
        let m = self.m();
        for i in 0..=m {
            w.write_record([
                i.to_string(),
                self.counts[i].to_string(),
                self.counts[m - i].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct CoefficientDoc {
    m: usize,
    counts: Vec<String>,
}

impl Serialize for CoefficientVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientDoc {
            m: self.m(),
            counts: self.counts.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefficientVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = CoefficientDoc::deserialize(d)?;
        if doc.counts.len() != doc.m + 1 {
            return Err(D::Error::custom("counts must have m + 1 entries"));
        }
        let counts = doc
            .counts
            .iter()
            .map(|c| c.parse::<BigUint>().map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { counts })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub guard_bits: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }
}

impl SweepOptions {
    fn check(&self, g: &SimpleGraph) -> Result<()> {
        if g.m() > self.guard_bits as usize {
            return Err(Error::Guard(format!(
                "2^{} edge subsets exceed the 2^{} sweep guard",
                g.m(),
                self.guard_bits
            )));
        }
        if g.n() > 32 || g.m() > 63 {
            return Err(Error::Guard("sweeps support at most 32 vertices".into()));
        }
        Ok(())
    }
}

/// Raw tallies from one sweep.
struct Tally {
    connected: Vec<u64>,
    split: Vec<Vec<u64>>,
}

impl Tally {
    fn new(m: usize, pairs: usize) -> Self {
        Self {
            connected: vec![0; m + 1],
            split: vec![vec![0; m + 1]; pairs],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.connected.iter_mut().zip(other.connected) {
            *a += b;
        }
        for (row, other_row) in self.split.iter_mut().zip(other.split) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        self
    }
}

/// Classifies every edge subset of `g`: counts connected spanning subgraphs
/// and, for each terminal pair, split subgraphs, by number of kept edges.
///
/// Subsets are visited by increasing integer encoding (bit `i` = edge `i`).
/// Large sweeps are cut into contiguous chunks summed in any order, so the
/// result does not depend on the scheduling.
fn sweep(g: &SimpleGraph, pairs: &[(usize, usize)], opts: &SweepOptions) -> Result<Tally> {
    opts.check(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let m = g.m();
    let edges: Vec<(u8, u8)> = g.edges().iter().map(|&(u, v)| (u as u8, v as u8)).collect();
    let pairs: Vec<(u32, u32)> = pairs.iter().map(|&(s, t)| (s as u32, t as u32)).collect();

    let run = |lo: u64, hi: u64| -> Tally {
        let mut tally = Tally::new(m, pairs.len());
        for mask in lo..hi {
            let mut dsu = SmallDsu::new(n);
            let mut merges = 0;
            let mut bits = mask;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if dsu.union(edges[e].0, edges[e].1) {
                    merges += 1;
                }
            }
            let kept = mask.count_ones() as usize;
            match n - merges {
                1 => tally.connected[kept] += 1,
                2 if !pairs.is_empty() => {
                    let r0 = dsu.find(0);
                    let mut side = 0u32;
                    for v in 0..n {
                        if dsu.find(v as u8) == r0 {
                            side |= 1 << v;
                        }
                    }
                    for (row, &(s, t)) in tally.split.iter_mut().zip(&pairs) {
                        if (side >> s & 1) != (side >> t & 1) {
                            row[kept] += 1;
                        }
                    }
                }
                _ => {}
            }
        }
        tally
    };

    let total = 1u64 << m;
    if m < PARALLEL_BITS {
        return Ok(run(0, total));
    }
    let chunk = 1u64 << CHUNK_BITS;
    Ok((0..total / chunk)
        .into_par_iter()
        .map(|c| run(c * chunk, (c + 1) * chunk))
        .reduce(|| Tally::new(m, pairs.len()), Tally::merge))
}

fn to_vector(raw: &[u64]) -> CoefficientVector {
    CoefficientVector::from_u64s(raw)
}

/// N_0..N_m: split subgraphs of `g` by number of surviving edges.
pub fn split_coefficients(g: &TwoTerminalGraph) -> Result<CoefficientVector> {
    split_coefficients_with(g, &SweepOptions::default())
}

pub fn split_coefficients_with(
    g: &TwoTerminalGraph,
    opts: &SweepOptions,
) -> Result<CoefficientVector> {
    let tally = sweep(g.graph(), &[g.terminals()], opts)?;
    Ok(to_vector(&tally.split[0]))
}

/// Split coefficient vectors of one graph for several terminal pairs, from
/// a single sweep.
pub fn split_coefficients_for_pairs(
    g: &SimpleGraph,
    pairs: &[(usize, usize)],
    opts: &SweepOptions,
) -> Result<Vec<CoefficientVector>> {
    for &(s, t) in pairs {
        TwoTerminalGraph::new(g.clone(), s, t)?;
    }
    let tally = sweep(g, pairs, opts)?;
    Ok(tally.split.iter().map(|row| to_vector(row)).collect())
}

/// Connected spanning subgraphs by number of edges: the coefficients of the
/// all-terminal reliability polynomial.
pub fn connected_coefficients(g: &SimpleGraph) -> Result<CoefficientVector> {
    connected_coefficients_with(g, &SweepOptions::default())
}

pub fn connected_coefficients_with(
    g: &SimpleGraph,
    opts: &SweepOptions,
) -> Result<CoefficientVector> {
    if g.n() == 1 {
        return Ok(CoefficientVector::from_u64s(&[1]));
    }
    let tally = sweep(g, &[], opts)?;
    Ok(to_vector(&tally.connected))
}

/// t(G) via the matrix-tree theorem. Disconnected graphs have no spanning
/// tree; the one-vertex graph has exactly one.
pub fn spanning_tree_count(g: &SimpleGraph) -> BigUint {
    laplacian_cofactor(g.n(), g.edges().iter().copied())
}

/// Matrix-tree count for a multigraph given as an edge list (parallel edges
/// allowed, loops ignored).
pub(crate) fn laplacian_cofactor(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> BigUint {
    if n <= 1 {
        return BigUint::one();
    }
    let mut lap = vec![vec![0i64; n]; n];
    for (u, v) in edges {
        if u == v {
            continue;
        }
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = lap[1..]
        .iter()
        .map(|row| row[1..].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let det = bareiss_determinant(minor);
    match det.sign() {
        Sign::Minus => unreachable!("Laplacian cofactors are nonnegative"),
        _ => det.magnitude().clone(),
    }
}

/// Fraction-free Gaussian elimination; every intermediate is an integer.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k {
        if a[col][col].is_zero() {
            match (col + 1..k).find(|&r| !a[r][col].is_zero()) {
                Some(r) => {
                    a.swap(col, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in col + 1..k {
            for c in col + 1..k {
                let v = (&a[r][c] * &a[col][col] - &a[r][col] * &a[col][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    sign * &a[k - 1][k - 1]
}

/// t_2(G): split subgraphs made of two disjoint trees, summed over vertex
/// bipartitions `S ∋ s`, `V \ S ∋ t` as `t(G[S]) · t(G[V \ S])`.
pub fn two_tree_count(g: &TwoTerminalGraph) -> BigUint {
    let (s, t) = g.terminals();
    let n = g.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut total = BigUint::zero();
    for mask in 0u64..(1 << others.len()) {
        let mut side = vec![s];
        let mut rest = vec![t];
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side.push(v);
            } else {
                rest.push(v);
            }
        }
        let a = spanning_tree_count(&g.graph().induced(&side));
        if a.is_zero() {
            continue;
        }
        total += a * spanning_tree_count(&g.graph().induced(&rest));
    }
    total
}

/// Checks `t(G) = t(G - e) + t(G * e)`. The contraction keeps the parallel
/// edges created by identifying the endpoints (multigraph contraction), which
/// is what the identity counts.
pub fn deletion_contraction_check(g: &SimpleGraph, e: usize) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.bridges()?.contains(&e) {
        return Err(Error::Precondition(format!("edge {e} is a bridge")));
    }
    let (u, v) = g.edge(e)?;
    let whole = spanning_tree_count(g);
    let deleted = spanning_tree_count(&g.remove_edge(e)?);
    let merge = |x: usize| match x.cmp(&v) {
        std::cmp::Ordering::Less => x,
        std::cmp::Ordering::Equal => u,
        std::cmp::Ordering::Greater => x - 1,
    };
    let contracted = laplacian_cofactor(
        g.n() - 1,
        g.edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (merge(a), merge(b))),
    );
    Ok(whole == deleted + contracted)
}

/// Seed for the Monte Carlo estimator.
///
/// Trials are cut into blocks of `2^14`; block `b` draws from ChaCha8 seeded
/// with `seed_from_u64(seed)` on stream `b`. Blocks may run on any worker, so
/// the estimate depends only on the seed and the trial count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSource {
    pub seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    fn block_rng(&self, block: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(block);
        rng
    }
}

const MC_BLOCK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub successes: u64,
    pub trials: u64,
}

/// Bernoulli estimate of SR_G(p): each edge survives independently with
/// probability `p`; a trial succeeds when the survivors form a split subgraph.
pub fn monte_carlo_sr(
    g: &TwoTerminalGraph,
    p: &BigRational,
    trials: u64,
    rng: RandomSource,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be positive".into()));
    }
    if p < &BigRational::zero() || p > &BigRational::one() {
        return Err(Error::Precondition("p must lie in [0, 1]".into()));
    }
    let graph = g.graph();
    if graph.n() > 32 {
        return Err(Error::Guard(
            "Monte Carlo supports at most 32 vertices".into(),
        ));
    }
    let prob = p.to_f64().unwrap_or(0.0);
    let n = graph.n();
    let (s, t) = g.terminals();
    let edges: Vec<(u8, u8)> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (u as u8, v as u8))
        .collect();
    let blocks = trials.div_ceil(MC_BLOCK);
    let successes: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut r = rng.block_rng(b);
            let len = MC_BLOCK.min(trials - b * MC_BLOCK);
            let mut hits = 0u64;
            for _ in 0..len {
                let mut dsu = SmallDsu::new(n);
                let mut merges = 0;
                for &(u, v) in &edges {
                    if r.random::<f64>() < prob && dsu.union(u, v) {
                        merges += 1;
                    }
                }
                if n - merges == 2 && dsu.find(s as u8) != dsu.find(t as u8) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let estimate = successes as f64 / trials as f64;
    Ok(McEstimate {
        estimate,
        std_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        successes,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSubset;
    use num_bigint::ToBigUint;

    /// Oracle: classify every subset with `is_split_subgraph`.
    fn brute_split(g: &TwoTerminalGraph) -> Vec<u64> {
        let m = g.m();
        let mut counts = vec![0; m + 1];
        for mask in 0u64..(1 << m) {
            if g.is_split_subgraph(&EdgeSubset::from_mask(mask)).unwrap() {
                counts[mask.count_ones() as usize] += 1;
            }
        }
        counts
    }

    fn tt(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> TwoTerminalGraph {
        TwoTerminalGraph::new(SimpleGraph::new(n, edges.iter().copied()).unwrap(), s, t).unwrap()
    }

    fn paw(s: usize, t: usize) -> TwoTerminalGraph {
        // triangle a=0, b=1, c=2 with d=3 hanging on a
        tt(4, &[(0, 1), (0, 2), (1, 2), (0, 3)], s, t)
    }

    #[test]
    fn split_coefficients_examples() {
        let k3 = TwoTerminalGraph::new(SimpleGraph::complete(3), 0, 1).unwrap();
        assert_eq!(brute_split(&k3), vec![0, 2, 0, 0]);
        assert_eq!(
            split_coefficients(&k3).unwrap(),
            CoefficientVector::from_u64s(&[0, 2, 0, 0])
        );

        let c4 = TwoTerminalGraph::new(SimpleGraph::cycle(4), 0, 2).unwrap();
        assert_eq!(brute_split(&c4), vec![0, 0, 4, 0, 0]);
        assert_eq!(
            split_coefficients(&c4).unwrap(),
            CoefficientVector::from_u64s(&[0, 0, 4, 0, 0])
        );

        let g44 = paw(3, 1);
        assert_eq!(brute_split(&g44), vec![0, 0, 5, 1, 0]);
        assert_eq!(
            split_coefficients(&g44).unwrap(),
            CoefficientVector::from_u64s(&[0, 0, 5, 1, 0])
        );
    }

    #[test]
    fn guard_refuses_large_sweeps() {
        let g = TwoTerminalGraph::new(SimpleGraph::complete(5), 0, 1).unwrap();
        let err = split_coefficients_with(&g, &SweepOptions { guard_bits: 8 }).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn connected_coefficient_examples() {
        assert_eq!(
            connected_coefficients(&SimpleGraph::cycle(4)).unwrap(),
            CoefficientVector::from_u64s(&[0, 0, 0, 4, 1])
        );
        let p5 = connected_coefficients(&SimpleGraph::path(5)).unwrap();
        assert_eq!(p5, CoefficientVector::from_u64s(&[0, 0, 0, 0, 1]));
        let k4 = connected_coefficients(&SimpleGraph::complete(4)).unwrap();
        assert_eq!(k4.get(3), &16u32.to_biguint().unwrap());
        assert_eq!(k4.get(6), &BigUint::one());
    }

    #[test]
    fn spanning_tree_examples() {
        for n in 1..=9u32 {
            let expected = if n == 1 {
                BigUint::one()
            } else {
                BigUint::from(n).pow(n - 2)
            };
            assert_eq!(
                spanning_tree_count(&SimpleGraph::complete(n as usize)),
                expected
            );
        }
        let k4e = SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(spanning_tree_count(&k4e), BigUint::from(8u32));
        // exhaustive count of 3-edge subsets that connect K4 - e
        let trees = (0u64..32)
            .filter(|m| m.count_ones() == 3)
            .filter(|&m| k4e.components(&EdgeSubset::from_mask(m)).unwrap().len() == 1)
            .count();
        assert_eq!(trees, 8);
        assert!(spanning_tree_count(&SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap()).is_zero());
    }

    #[test]
    fn two_tree_examples() {
        // K4 - e, terminals the two degree-2 vertices 2 and 3
        let k4e = tt(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], 2, 3);
        assert_eq!(two_tree_count(&k4e), BigUint::from(8u32));
        assert_eq!(brute_split(&k4e)[2], 8);
        let c4 = TwoTerminalGraph::new(SimpleGraph::cycle(4), 0, 2).unwrap();
        assert_eq!(two_tree_count(&c4), BigUint::from(4u32));
        for n in 2..8 {
            let p = TwoTerminalGraph::new(SimpleGraph::path(n), 0, n - 1).unwrap();
            assert_eq!(two_tree_count(&p), BigUint::from(n as u32 - 1));
        }
    }

    #[test]
    fn deletion_contraction_examples() {
        for e in 0..4 {
            assert!(deletion_contraction_check(&SimpleGraph::cycle(4), e).unwrap());
        }
        for e in 0..6 {
            assert!(deletion_contraction_check(&SimpleGraph::complete(4), e).unwrap());
        }
        assert!(deletion_contraction_check(&SimpleGraph::path(3), 0).is_err());
    }

    #[test]
    fn monte_carlo_edges_and_k3() {
        let g = paw(3, 1);
        for p in [BigRational::zero(), BigRational::one()] {
            let est = monte_carlo_sr(&g, &p, 1000, RandomSource::new(1)).unwrap();
            assert_eq!(est.estimate, 0.0);
        }
        let k3 = TwoTerminalGraph::new(SimpleGraph::complete(3), 0, 1).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let est = monte_carlo_sr(&k3, &half, 1_000_000, RandomSource::new(7)).unwrap();
        assert!(
            (est.estimate - 0.25).abs() <= 4.0 * est.std_error,
            "{est:?}"
        );
        let again = monte_carlo_sr(&k3, &half, 1_000_000, RandomSource::new(7)).unwrap();
        assert_eq!(est, again);
        assert!(monte_carlo_sr(&k3, &half, 0, RandomSource::new(7)).is_err());
    }

    #[test]
    fn coefficient_json_round_trip() {
        let v = CoefficientVector::new(vec![
            BigUint::zero(),
            "123456789012345678901234567890".parse().unwrap(),
            BigUint::one(),
        ]);
        let json = v.to_json();
        assert_eq!(
            json,
            r#"{"m":2,"counts":["0","123456789012345678901234567890","1"]}"#
        );
        let back: CoefficientVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<CoefficientVector>(r#"{"m":3,"counts":["1"]}"#).is_err());
    }

    #[test]
    fn csv_rows() {
        let v = CoefficientVector::from_u64s(&[0, 0, 5, 1, 0]);
        let mut buf = Vec::new();
        v.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "i,N_i,F_i\n0,0,0\n1,0,1\n2,5,5\n3,1,0\n4,0,0\n");
    }
}
