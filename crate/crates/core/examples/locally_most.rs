//! Refinement chain of T(n,m) (default 6 9): survivors per level and the
//! locally most split reliable members.

use splitrel::enumeration::refine_chain;

fn main() -> splitrel::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, m) = match args[..] {
        [n, m] => (n, m),
        _ => (6, 9),
    };
    let ledger = refine_chain(n, m)?;
    println!("T({n},{m}): {} two-terminal graphs", ledger.entries.len());
    for (level, survivors) in ledger.chain.iter().enumerate() {
        println!("level {level}: {} survivors", survivors.len());
    }
    println!("stopped at level {}", ledger.stop_level());
    for &i in &ledger.locally_most {
        let e = &ledger.entries[i];
        let f: Vec<String> = (1..=m.min(n))
            .map(|k| e.signature.f(k).to_string())
            .collect();
        println!("{}  F = {}", e.graph, f.join(" "));
    }
    println!("uniform verdict: {}", ledger.uniform.label());
    Ok(())
}
