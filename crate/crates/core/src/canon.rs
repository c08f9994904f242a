//! Canonical labeling of small graphs and two-terminal graphs.
//!
//! Vertices are first colored by iterated neighbourhood refinement (the
//! terminals start in their own colors). The canonical labeling is the
//! color-respecting vertex order that minimizes the upper-triangle adjacency
//! string read column by column: `(0,1), (0,2), (1,2), (0,3), ...`, first pair
//! most significant. Placing vertices one position at a time fixes a prefix
//! of that string, so the search prunes any branch whose prefix already
//! exceeds the best one found.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TwoTerminalGraph};

/// Largest vertex count accepted by the canonical search.
pub const MAX_CANON_VERTICES: usize = 9;

/// Isomorphism-invariant key. For two-terminal keys the terminals occupy
/// positions 0 and 1 of the canonical labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub bits: u64,
}

impl CanonicalForm {
    fn pair_count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// The graph on `0..n` encoded by the key.
    pub fn to_graph(&self) -> SimpleGraph {
        let n = self.n as usize;
        let total = Self::pair_count(n);
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (total - 1 - idx) & 1 == 1 {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        SimpleGraph::new(n, edges).expect("keys encode simple graphs")
    }

    /// The two-terminal graph with terminals `0` and `1`.
    pub fn to_two_terminal(&self) -> TwoTerminalGraph {
        TwoTerminalGraph::new(self.to_graph(), 0, 1).expect("two-terminal keys have n >= 2")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}", self.n, self.bits)
    }
}

/// Result of a canonical search.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `labeling[old] = new`.
    pub labeling: Vec<usize>,
    /// Size of the automorphism group (terminal-set preserving for
    /// two-terminal graphs).
    pub automorphisms: u64,
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_CANON_VERTICES {
        return Err(Error::Guard(format!(
            "canonical labeling supports at most {MAX_CANON_VERTICES} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Stable refinement of an initial coloring: a vertex's new color is its old
/// color followed by the sorted colors of its neighbours, ranked.
fn refine(adj: &[u32], mut color: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| color[u])
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> = {
            let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
            sorted.sort();
            sorted.dedup();
            sorted
                .into_iter()
                .enumerate()
                .map(|(i, k)| (k, i))
                .collect()
        };
        let next: Vec<usize> = keys.iter().map(|k| ranks[k]).collect();
        let before = color
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let after = ranks.len();
        color = next;
        if after == before {
            return color;
        }
    }
}

struct Search<'a> {
    adj: &'a [u32],
    total: usize,
    /// Allowed vertices for each position.
    slots: Vec<u32>,
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
    ties: u64,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, used: u32, code: u64) {
        let n = self.adj.len();
        if pos == n {
            match &self.best {
                Some((b, _)) if code > *b => {}
                Some((b, _)) if code == *b => self.ties += 1,
                _ => {
                    self.best = Some((code, self.order.clone()));
                    self.ties = 1;
                }
            }
            return;
        }
        let mut candidates = self.slots[pos] & !used;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let mut next = code;
            for &u in &self.order {
                next = next << 1 | u64::from(self.adj[v] >> u & 1);
            }
            let placed = (pos + 1) * pos / 2;
            if let Some((b, _)) = &self.best {
                let prefix = if placed == 0 {
                    0
                } else {
                    b >> (self.total - placed)
                };
                if next > prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.run(pos + 1, used | 1 << v, next);
            self.order.pop();
        }
    }
}

fn masks(g: &SimpleGraph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Best code, its vertex order and the number of optimal orders, over orders
/// that respect the refined coloring.
fn search(adj: &[u32], initial: Vec<usize>) -> (u64, Vec<usize>, u64) {
    let n = adj.len();
    let color = refine(adj, initial);
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| (color[v], v));
    let slots: Vec<u32> = by_color
        .iter()
        .map(|&v| {
            (0..n)
                .filter(|&u| color[u] == color[v])
                .fold(0u32, |m, u| m | 1 << u)
        })
        .collect();
    let mut s = Search {
        adj,
        total: CanonicalForm::pair_count(n),
        slots,
        order: Vec::with_capacity(n),
        best: None,
        ties: 0,
    };
    s.run(0, 0, 0);
    let (code, order) = s.best.expect("at least one order exists");
    (code, order, s.ties)
}

fn labeling_from_order(order: &[usize]) -> Vec<usize> {
    let mut labeling = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        labeling[old] = new;
    }
    labeling
}

pub fn canonical_graph(g: &SimpleGraph) -> Result<Canonical> {
    guard(g.n())?;
    let adj = masks(g);
    let (bits, order, ties) = search(&adj, vec![0; g.n()]);
    Ok(Canonical {
        form: CanonicalForm {
            n: g.n() as u8,
            bits,
        },
        labeling: labeling_from_order(&order),
        automorphisms: ties,
    })
}

/// Minimizes over both assignments of the terminals to positions 0 and 1.
pub fn canonical_two_terminal(g: &TwoTerminalGraph) -> Result<Canonical> {
    guard(g.n())?;
    let adj = masks(g.graph());
    let (s, t) = g.terminals();
    let run = |a: usize, b: usize| {
        let mut initial = vec![2; g.n()];
        initial[a] = 0;
        initial[b] = 1;
        search(&adj, initial)
    };
    let (c1, o1, k1) = run(s, t);
    let (c2, o2, k2) = run(t, s);
    let (bits, order, ties) = match c1.cmp(&c2) {
        std::cmp::Ordering::Less => (c1, o1, k1),
        std::cmp::Ordering::Greater => (c2, o2, k2),
        std::cmp::Ordering::Equal => (c1, o1, k1 + k2),
    };
    Ok(Canonical {
        form: CanonicalForm {
            n: g.n() as u8,
            bits,
        },
        labeling: labeling_from_order(&order),
        automorphisms: ties,
    })
}

pub fn canonical_form(g: &TwoTerminalGraph) -> Result<CanonicalForm> {
    Ok(canonical_two_terminal(g)?.form)
}

/// The graph relabeled canonically, terminals at `0` and `1`.
pub fn canonical_representative(g: &TwoTerminalGraph) -> Result<TwoTerminalGraph> {
    Ok(canonical_form(g)?.to_two_terminal())
}

pub fn isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool> {
    if (a.n(), a.m()) != (b.n(), b.m()) {
        return Ok(false);
    }
    Ok(canonical_graph(a)?.form == canonical_graph(b)?.form)
}

/// Isomorphism mapping the terminal set onto the terminal set.
pub fn isomorphic_two_terminal(a: &TwoTerminalGraph, b: &TwoTerminalGraph) -> Result<bool> {
    if (a.n(), a.m()) != (b.n(), b.m()) {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tt(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> TwoTerminalGraph {
        TwoTerminalGraph::new(SimpleGraph::new(n, edges.iter().copied()).unwrap(), s, t).unwrap()
    }

    const PAW: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 2), (0, 3)];

    /// Oracle: minimum code over every permutation fixing the terminal set.
    fn brute_two_terminal(g: &TwoTerminalGraph) -> (u64, u64) {
        use itertools::Itertools;
        let n = g.n();
        let (s, t) = g.terminals();
        let adj = masks(g.graph());
        let mut best = u64::MAX;
        let mut count = 0;
        for order in (0..n).permutations(n) {
            if !((order[0] == s && order[1] == t) || (order[0] == t && order[1] == s)) {
                continue;
            }
            let mut code = 0u64;
            for j in 1..n {
                for i in 0..j {
                    code = code << 1 | u64::from(adj[order[j]] >> order[i] & 1);
                }
            }
            match code.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = code;
                    count = 1;
                }
                std::cmp::Ordering::Equal => count += 1,
                _ => {}
            }
        }
        (best, count)
    }

    #[test]
    fn examples() {
        let c4_adj = TwoTerminalGraph::new(SimpleGraph::cycle(4), 0, 1).unwrap();
        let c4_opp = TwoTerminalGraph::new(SimpleGraph::cycle(4), 0, 2).unwrap();
        assert_ne!(
            canonical_form(&c4_adj).unwrap(),
            canonical_form(&c4_opp).unwrap()
        );
        // paw: a=0, b=1, c=2, d=3; {d,b} and {d,c} are swapped by an automorphism
        assert_eq!(
            canonical_form(&tt(4, &PAW, 3, 1)).unwrap(),
            canonical_form(&tt(4, &PAW, 3, 2)).unwrap()
        );
        assert_ne!(
            canonical_form(&tt(4, &PAW, 3, 1)).unwrap(),
            canonical_form(&tt(4, &PAW, 3, 0)).unwrap()
        );
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(
            canonical_graph(&SimpleGraph::complete(5))
                .unwrap()
                .automorphisms,
            120
        );
        assert_eq!(
            canonical_graph(&SimpleGraph::cycle(6))
                .unwrap()
                .automorphisms,
            12
        );
        assert_eq!(
            canonical_graph(&SimpleGraph::path(5))
                .unwrap()
                .automorphisms,
            2
        );
        let paw = SimpleGraph::new(4, PAW).unwrap();
        assert_eq!(canonical_graph(&paw).unwrap().automorphisms, 2);
        assert_eq!(
            canonical_two_terminal(&tt(4, &PAW, 1, 2))
                .unwrap()
                .automorphisms,
            2
        );
        assert_eq!(
            canonical_two_terminal(&tt(4, &PAW, 3, 1))
                .unwrap()
                .automorphisms,
            1
        );
    }

    #[test]
    fn key_round_trip() {
        let g = tt(4, &PAW, 3, 1);
        let c = canonical_two_terminal(&g).unwrap();
        let rep = c.form.to_two_terminal();
        assert_eq!(rep, g.relabel(&c.labeling));
        assert_eq!(canonical_form(&rep).unwrap(), c.form);
    }

    #[test]
    fn guard_applies() {
        assert!(canonical_graph(&SimpleGraph::path(10))
            .unwrap_err()
            .is_guard());
    }

    /// Counts and minimum-code isomorphism classes agree with the full
    /// permutation search on every two-terminal graph with 5 vertices.
    #[test]
    fn agrees_with_brute_force_on_five_vertices() {
        let all: Vec<(usize, usize)> = (0..5).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut classes_fast = std::collections::HashSet::new();
        let mut classes_slow = std::collections::HashSet::new();
        for mask in 0u32..(1 << all.len()) {
            let edges: Vec<_> = (0..all.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            let g = SimpleGraph::new(5, edges).unwrap();
            for (s, t) in [(0, 1), (0, 4), (2, 3)] {
                let tg = TwoTerminalGraph::new(g.clone(), s, t).unwrap();
                let c = canonical_two_terminal(&tg).unwrap();
                let (code, count) = brute_two_terminal(&tg);
                assert_eq!(c.automorphisms, count);
                classes_fast.insert(c.form);
                classes_slow.insert(code);
            }
        }
        assert_eq!(classes_fast.len(), classes_slow.len());
    }

    fn arb_graph() -> impl Strategy<Value = (SimpleGraph, Vec<usize>)> {
        (4usize..=8).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                prop::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(move |(keep, perm)| {
                    let all: Vec<(usize, usize)> =
                        (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
                    let edges = all
                        .into_iter()
                        .zip(keep)
                        .filter(|(_, k)| *k)
                        .map(|(e, _)| e);
                    (SimpleGraph::new(n, edges).unwrap(), perm)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn relabeling_invariance((g, perm) in arb_graph()) {
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_graph(&g).unwrap().form, canonical_graph(&h).unwrap().form);
            let a = TwoTerminalGraph::new(g.clone(), 0, 1).unwrap();
            let b = a.relabel(&perm);
            let (ca, cb) = (canonical_two_terminal(&a).unwrap(), canonical_two_terminal(&b).unwrap());
            prop_assert_eq!(ca.form, cb.form);
            prop_assert_eq!(ca.automorphisms, cb.automorphisms);
            prop_assert_eq!(ca.form.to_graph(), g.relabel(&ca.labeling));
        }
    }
}
