//! Isomorphism classes of small connected graphs and two-terminal graphs,
//! the refinement chain that isolates the locally most split reliable
//! members of a class, and the uniform-winner decision.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::canon::{canonical_form, canonical_graph, CanonicalForm};
use crate::constructions::{choose, two_terminal_balloon, ClassIndex};
use crate::engine::{split_coefficients_for_pairs, CoefficientVector, SweepOptions};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TwoTerminalGraph};
use crate::io::GraphDocument;
use crate::poly::{format_rational, parse_rational};
use crate::report::Report;
use crate::signature::{compare_near_zero, signature_dominates, SplitSignature};

/// Largest vertex count for full class enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// Bumped whenever the serialized ledger changes shape.
pub const LEDGER_FORMAT_VERSION: u32 = 1;

const CHUNK_BITS: usize = 12;

fn guard(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::Guard(format!(
            "class enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Nonempty classes: `n >= 1` and `n - 1 <= m <= C(n,2)`.
fn require_nonempty(n: usize, m: usize) -> Result<()> {
    if n == 0 || m + 1 < n || m > choose(n, 2) {
        return Err(Error::OutOfClass {
            n,
            m,
            set: "the nonempty classes",
        });
    }
    Ok(())
}

fn connected(n: usize, adj: &[u32]) -> bool {
    let full = (1u32 << n) - 1;
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        let mut rest = seen;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= adj[v];
        }
        if next == seen {
            return seen == full;
        }
        seen = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedGraph {
    pub form: CanonicalForm,
    /// The canonically labeled representative.
    pub graph: SimpleGraph,
    pub automorphisms: u64,
}

/// The isomorphism classes of connected graphs with `n` vertices and `m`
/// edges together with the number of labeled connected graphs seen.
#[derive(Clone, Debug)]
pub struct GraphEnumeration {
    pub n: usize,
    pub m: usize,
    pub graphs: Vec<EnumeratedGraph>,
    pub labeled_connected: u64,
}

impl GraphEnumeration {
    /// `Σ n! / |Aut(G)|`: the number of labeled graphs the classes account for.
    pub fn orbit_sum(&self) -> u64 {
        let factorial: u64 = (1..=self.n as u64).product();
        self.graphs
            .iter()
            .map(|g| factorial / g.automorphisms)
            .sum()
    }
}

/// Sweeps every labeled edge set of size `m` on `n` vertices, keeps the
/// connected ones and canonicalizes them.
pub fn enumerate_class(n: usize, m: usize) -> Result<GraphEnumeration> {
    guard(n)?;
    if n == 0 {
        return Err(Error::Precondition(
            "a graph needs at least one vertex".into(),
        ));
    }
    let pairs = SimpleGraph::complete(n).edges().to_vec();
    let p = pairs.len();
    if m > p {
        return Err(Error::OutOfClass {
            n,
            m,
            set: "the simple graphs",
        });
    }
    let chunk_bits = CHUNK_BITS.min(p);
    let chunks = 1u64 << (p - chunk_bits);
    let (found, labeled) = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<(HashMap<CanonicalForm, u64>, u64)> {
            let mut found = HashMap::new();
            let mut labeled = 0u64;
            for low in 0..1u64 << chunk_bits {
                let mask = c << chunk_bits | low;
                if mask.count_ones() as usize != m {
                    continue;
                }
                let mut adj = [0u32; MAX_ENUMERATION_VERTICES];
                let mut edges = Vec::with_capacity(m);
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[u] |= 1 << v;
                        adj[v] |= 1 << u;
                        edges.push((u, v));
                    }
                }
                if !connected(n, &adj[..n]) {
                    continue;
                }
                labeled += 1;
                let canon = canonical_graph(&SimpleGraph::new(n, edges)?)?;
                found.entry(canon.form).or_insert(canon.automorphisms);
            }
            Ok((found, labeled))
        })
        .try_reduce(
            || (HashMap::new(), 0),
            |(mut a, x), (b, y)| {
                a.extend(b);
                Ok((a, x + y))
            },
        )?;
    let mut graphs: Vec<EnumeratedGraph> = found
        .into_iter()
        .map(|(form, automorphisms)| EnumeratedGraph {
            form,
            graph: form.to_graph(),
            automorphisms,
        })
        .collect();
    graphs.sort_by_key(|g| g.form);
    Ok(GraphEnumeration {
        n,
        m,
        graphs,
        labeled_connected: labeled,
    })
}

/// One representative per isomorphism class of `C_{n,m}`, sorted by key.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<SimpleGraph>> {
    Ok(enumerate_class(n, m)?
        .graphs
        .into_iter()
        .map(|g| g.graph)
        .collect())
}

/// One terminal pair per orbit of unordered vertex pairs, first pair in
/// lexicographic order kept.
fn terminal_orbits(g: &SimpleGraph) -> Result<Vec<(CanonicalForm, (usize, usize))>> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for v in 1..g.n() {
        for u in 0..v {
            let form = canonical_form(&TwoTerminalGraph::new(g.clone(), u, v)?)?;
            if seen.insert(form, ()).is_none() {
                out.push((form, (u, v)));
            }
        }
    }
    Ok(out)
}

/// Representatives of `T_{n,m}` with terminals `0` and `1`, sorted by key.
pub fn enumerate_two_terminal(n: usize, m: usize) -> Result<Vec<TwoTerminalGraph>> {
    let mut forms = Vec::new();
    for g in enumerate_class(n, m)?.graphs {
        forms.extend(terminal_orbits(&g.graph)?.into_iter().map(|(f, _)| f));
    }
    forms.sort();
    Ok(forms.iter().map(CanonicalForm::to_two_terminal).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Winner {
        representative: TwoTerminalGraph,
        /// Taken from the literature rather than computed.
        cited: bool,
    },
    NoWinner {
        candidate: TwoTerminalGraph,
        rival: TwoTerminalGraph,
        /// `SR_candidate(witness) < SR_rival(witness)`.
        witness: BigRational,
        /// First index where the N-tuples of rival and candidate differ.
        near_zero_index: Option<usize>,
        rival_wins_near_zero: bool,
    },
}

impl Verdict {
    pub fn has_winner(&self) -> bool {
        matches!(self, Verdict::Winner { .. })
    }

    pub fn label(&self) -> &'static str {
        if self.has_winner() {
            "WINNER"
        } else {
            "NONE"
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
enum VerdictDocument {
    Winner {
        representative: GraphDocument,
        cited: bool,
    },
    None {
        candidate: GraphDocument,
        rival: GraphDocument,
        witness: String,
        near_zero_index: Option<usize>,
        rival_wins_near_zero: bool,
    },
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = match self {
            Verdict::Winner {
                representative,
                cited,
            } => VerdictDocument::Winner {
                representative: GraphDocument::from_two_terminal(representative),
                cited: *cited,
            },
            Verdict::NoWinner {
                candidate,
                rival,
                witness,
                near_zero_index,
                rival_wins_near_zero,
            } => VerdictDocument::None {
                candidate: GraphDocument::from_two_terminal(candidate),
                rival: GraphDocument::from_two_terminal(rival),
                witness: format_rational(witness),
                near_zero_index: *near_zero_index,
                rival_wins_near_zero: *rival_wins_near_zero,
            },
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let convert = |e: Error| D::Error::custom(e.to_string());
        Ok(match VerdictDocument::deserialize(d)? {
            VerdictDocument::Winner {
                representative,
                cited,
            } => Verdict::Winner {
                representative: representative.to_two_terminal().map_err(convert)?,
                cited,
            },
            VerdictDocument::None {
                candidate,
                rival,
                witness,
                near_zero_index,
                rival_wins_near_zero,
            } => Verdict::NoWinner {
                candidate: candidate.to_two_terminal().map_err(convert)?,
                rival: rival.to_two_terminal().map_err(convert)?,
                witness: parse_rational(&witness).map_err(convert)?,
                near_zero_index,
                rival_wins_near_zero,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LedgerEntry {
    pub form: CanonicalForm,
    /// Canonical representative, terminals `0` and `1`.
    pub graph: TwoTerminalGraph,
    pub signature: SplitSignature,
    /// Index into [`ClassLedger::classes`].
    pub class_id: usize,
    /// Deepest level of the chain containing this entry.
    pub survives_until: usize,
}

/// Everything known about one class `T_{n,m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassLedger {
    pub n: usize,
    pub m: usize,
    /// Sorted by canonical key.
    pub entries: Vec<LedgerEntry>,
    /// Split-equivalence classes as entry indices, numbered by first entry.
    pub classes: Vec<Vec<usize>>,
    /// `chain[i]` is `T^(i)`; the last level is where every survivor is
    /// split-equivalent.
    pub chain: Vec<Vec<usize>>,
    /// The locally most split reliable members.
    pub locally_most: Vec<usize>,
    pub uniform: Verdict,
}

impl ClassLedger {
    pub fn stop_level(&self) -> usize {
        self.chain.len() - 1
    }

    /// The entry split-equivalent to every locally most member.
    pub fn locally_most_representative(&self) -> &LedgerEntry {
        &self.entries[self.locally_most[0]]
    }

    /// Entries whose signature equals `sig`.
    pub fn equivalent_to(&self, sig: &SplitSignature) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&i| self.entries[i].signature.counts == sig.counts)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ledgers serialize")
    }

    fn f_prefix(&self, e: &LedgerEntry) -> String {
        (1..=self.m.min(self.n))
            .map(|i| e.signature.f(i).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// One row per representative: key, leading F values, class, last level.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["key", "f_prefix", "class_id", "survives_until"])?;
        for e in &self.entries {
            w.write_record([
                e.form.to_string(),
                self.f_prefix(e),
                e.class_id.to_string(),
                e.survives_until.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct EntryDocument {
    key: CanonicalForm,
    graph: GraphDocument,
    signature: CoefficientVector,
    class_id: usize,
    survives_until: usize,
}

#[derive(Serialize, Deserialize)]
struct LedgerDocument {
    format_version: u32,
    n: usize,
    m: usize,
    entries: Vec<EntryDocument>,
    classes: Vec<Vec<usize>>,
    chain: Vec<Vec<usize>>,
    stop_level: usize,
    locally_most: Vec<usize>,
    uniform: Verdict,
}

impl Serialize for ClassLedger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LedgerDocument {
            format_version: LEDGER_FORMAT_VERSION,
            n: self.n,
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|e| EntryDocument {
                    key: e.form,
                    graph: GraphDocument::from_two_terminal(&e.graph),
                    signature: e.signature.counts.clone(),
                    class_id: e.class_id,
                    survives_until: e.survives_until,
                })
                .collect(),
            classes: self.classes.clone(),
            chain: self.chain.clone(),
            stop_level: self.stop_level(),
            locally_most: self.locally_most.clone(),
            uniform: self.uniform.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassLedger {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = LedgerDocument::deserialize(d)?;
        if doc.format_version != LEDGER_FORMAT_VERSION {
            return Err(D::Error::custom(format!(
                "ledger format {} is not {LEDGER_FORMAT_VERSION}",
                doc.format_version
            )));
        }
        let len = doc.entries.len();
        let in_range = |v: &Vec<usize>| v.iter().all(|&i| i < len);
        if doc.chain.is_empty()
            || doc.stop_level + 1 != doc.chain.len()
            || !doc.chain.iter().all(in_range)
            || !doc.classes.iter().all(in_range)
            || !in_range(&doc.locally_most)
            || doc.locally_most.is_empty()
        {
            return Err(D::Error::custom("inconsistent ledger indices"));
        }
        let mut entries = Vec::with_capacity(len);
        for e in doc.entries {
            if e.signature.m() != doc.m || e.graph.n != doc.n {
                return Err(D::Error::custom("entry outside the ledger's class"));
            }
            entries.push(LedgerEntry {
                form: e.key,
                graph: e
                    .graph
                    .to_two_terminal()
                    .map_err(|e| D::Error::custom(e.to_string()))?,
                signature: SplitSignature::new(doc.n, e.signature),
                class_id: e.class_id,
                survives_until: e.survives_until,
            });
        }
        Ok(ClassLedger {
            n: doc.n,
            m: doc.m,
            entries,
            classes: doc.classes,
            chain: doc.chain,
            locally_most: doc.locally_most,
            uniform: doc.uniform,
        })
    }
}

/// Builds the ledger of `T_{n,m}`: members, signatures, chain and verdict.
pub fn refine_chain(n: usize, m: usize) -> Result<ClassLedger> {
    refine_chain_with(n, m, &SweepOptions::default())
}

pub fn refine_chain_with(n: usize, m: usize, opts: &SweepOptions) -> Result<ClassLedger> {
    guard(n)?;
    require_nonempty(n, m)?;
    if n < 2 {
        return Err(Error::Precondition(
            "two terminals need two vertices".into(),
        ));
    }
    let graphs = enumerate_class(n, m)?.graphs;
    let per_graph = graphs
        .par_iter()
        .map(|g| -> Result<Vec<(CanonicalForm, CoefficientVector)>> {
            let orbits = terminal_orbits(&g.graph)?;
            let pairs: Vec<_> = orbits.iter().map(|&(_, p)| p).collect();
            let counts = split_coefficients_for_pairs(&g.graph, &pairs, opts)?;
            Ok(orbits.into_iter().map(|(f, _)| f).zip(counts).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut members: Vec<_> = per_graph.into_iter().flatten().collect();
    members.sort_by_key(|(f, _)| *f);

    let mut class_of: HashMap<&CoefficientVector, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_ids = Vec::with_capacity(members.len());
    for (i, (_, counts)) in members.iter().enumerate() {
        let id = *class_of.entry(counts).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(i);
        class_ids.push(id);
    }

    let mut entries: Vec<LedgerEntry> = members
        .iter()
        .zip(&class_ids)
        .map(|((form, counts), &class_id)| LedgerEntry {
            form: *form,
            graph: form.to_two_terminal(),
            signature: SplitSignature::new(n, counts.clone()),
            class_id,
            survives_until: 0,
        })
        .collect();

    let mut chain = vec![(0..entries.len()).collect::<Vec<_>>()];
    loop {
        let current = chain.last().unwrap();
        let first = entries[current[0]].class_id;
        if current.iter().all(|&i| entries[i].class_id == first) {
            break;
        }
        let level = chain.len();
        let best: BigUint = current
            .iter()
            .map(|&i| entries[i].signature.f(level).clone())
            .max()
            .unwrap();
        let next: Vec<usize> = current
            .iter()
            .copied()
            .filter(|&i| entries[i].signature.f(level) == &best)
            .collect();
        chain.push(next);
    }
    for (level, members) in chain.iter().enumerate() {
        for &i in members {
            entries[i].survives_until = level;
        }
    }
    let locally_most = chain.last().unwrap().clone();
    let uniform = decide_uniform(&entries, &classes, locally_most[0])?;
    Ok(ClassLedger {
        n,
        m,
        entries,
        classes,
        chain,
        locally_most,
        uniform,
    })
}

/// Tests the locally most representative against one member of every other
/// split-equivalence class, the N-lexicographic maximum first.
fn decide_uniform(
    entries: &[LedgerEntry],
    classes: &[Vec<usize>],
    candidate: usize,
) -> Result<Verdict> {
    let cand = &entries[candidate];
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut near_zero_max = reps[0];
    for &r in &reps[1..] {
        if compare_near_zero(&entries[r].signature, &entries[near_zero_max].signature)?.ordering
            == Ordering::Greater
        {
            near_zero_max = r;
        }
    }
    let order: Vec<usize> = std::iter::once(near_zero_max)
        .chain(reps.iter().copied().filter(|&r| r != near_zero_max))
        .filter(|&r| entries[r].class_id != cand.class_id)
        .collect();
    let crossing = order
        .par_iter()
        .map(|&r| -> Result<Option<(usize, BigRational)>> {
            let verdict = signature_dominates(&cand.signature, &entries[r].signature)?;
            Ok(verdict.witness().map(|w| (r, w.clone())))
        })
        .find_map_first(|x| match x {
            Ok(None) => None,
            other => Some(other),
        });
    match crossing {
        None => Ok(Verdict::Winner {
            representative: cand.graph.clone(),
            cited: false,
        }),
        Some(result) => {
            let (r, witness) = result?.expect("only crossings are kept");
            let cmp = compare_near_zero(&entries[r].signature, &cand.signature)?;
            Ok(Verdict::NoWinner {
                candidate: cand.graph.clone(),
                rival: entries[r].graph.clone(),
                witness,
                near_zero_index: cmp.index,
                rival_wins_near_zero: cmp.ordering == Ordering::Greater,
            })
        }
    }
}

/// The settled answer for trees: the path with its ends as terminals.
pub fn tree_class_verdict(n: usize) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::Precondition(
            "two terminals need two vertices".into(),
        ));
    }
    Ok(Verdict::Winner {
        representative: TwoTerminalGraph::new(SimpleGraph::path(n), 0, n - 1)?,
        cited: true,
    })
}

/// Whether `T_{n,m}` has a uniformly most split reliable member. Tree
/// classes return the cited path answer without enumeration.
pub fn uniform_check(n: usize, m: usize) -> Result<Verdict> {
    guard(n)?;
    require_nonempty(n, m)?;
    if ClassIndex::new(n, m).is_tree_class() {
        return tree_class_verdict(n);
    }
    Ok(refine_chain(n, m)?.uniform)
}

/// The locally most members of the ledger are exactly the members
/// split-equivalent to the two-terminal balloon.
pub fn verify_theorem1(ledger: &ClassLedger) -> Result<Report> {
    let (n, m) = (ledger.n, ledger.m);
    ClassIndex::new(n, m).require_i()?;
    let balloon = two_terminal_balloon(n, m)?;
    let sig = SplitSignature::of(&balloon)?;
    let direct = ledger.equivalent_to(&sig);
    let mut refined = ledger.locally_most.clone();
    refined.sort();
    let one_class = refined
        .iter()
        .all(|&i| ledger.entries[i].class_id == ledger.entries[refined[0]].class_id);
    let balloon_key = canonical_form(&balloon)?;
    let contains_balloon = refined
        .iter()
        .any(|&i| ledger.entries[i].form == balloon_key);
    let prefix: Vec<String> = (1..=m.min(n)).map(|i| sig.f(i).to_string()).collect();
    Ok(Report::check(
        format!("locally most split reliable members of T({n},{m}) are the balloon's class"),
        refined == direct && one_class && contains_balloon,
        json!({
            "n": n,
            "m": m,
            "members": ledger.entries.len(),
            "locally_most": refined.len(),
            "equivalent_to_balloon": direct.len(),
            "stop_level": ledger.stop_level(),
            "contains_balloon": contains_balloon,
            "f_prefix": prefix,
        }),
    ))
}
