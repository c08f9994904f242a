use splitrel::constructions::choose;
use splitrel::enumeration::{enumerate_class, refine_chain};

/// Connected graphs on n vertices: unlabeled and labeled totals.
const CONNECTED: [(usize, usize, u64); 6] = [
    (2, 1, 1),
    (3, 2, 4),
    (4, 6, 38),
    (5, 21, 728),
    (6, 112, 26704),
    (7, 853, 1866256),
];

#[test]
fn connected_graph_totals() {
    for (n, unlabeled, labeled) in CONNECTED {
        let (mut u, mut l) = (0, 0);
        for m in n - 1..=choose(n, 2) {
            let e = enumerate_class(n, m).unwrap();
            assert_eq!(e.orbit_sum(), e.labeled_connected, "({n},{m})");
            u += e.graphs.len();
            l += e.labeled_connected;
        }
        assert_eq!((u, l), (unlabeled, labeled), "n = {n}");
    }
}

#[test]
fn chain_shrinks_to_one_class() {
    for (n, m) in [(5, 5), (5, 8), (6, 8), (6, 12)] {
        let ledger = refine_chain(n, m).unwrap();
        for w in ledger.chain.windows(2) {
            assert!(w[1].len() <= w[0].len());
            assert!(w[1].iter().all(|i| w[0].contains(i)));
        }
        let first = ledger.entries[ledger.locally_most[0]].class_id;
        assert!(ledger
            .locally_most
            .iter()
            .all(|&i| ledger.entries[i].class_id == first));
    }
}
