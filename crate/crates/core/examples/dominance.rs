//! Exact dominance between the split reliability polynomials of the
//! locally most member of T(n,m) (default 6 8) and every other member.

use splitrel::enumeration::refine_chain;
use splitrel::poly::format_rational;
use splitrel::signature::{compare_near_zero, signature_dominates};
use splitrel::sturm::Dominance;

fn main() -> splitrel::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, m) = match args[..] {
        [n, m] => (n, m),
        _ => (6, 8),
    };
    let ledger = refine_chain(n, m)?;
    let best = ledger.locally_most_representative();
    println!("locally most: {}", best.graph);
    for e in &ledger.entries {
        if let Dominance::Crossing(p) = signature_dominates(&best.signature, &e.signature)? {
            let near = compare_near_zero(&e.signature, &best.signature)?;
            println!(
                "beaten at p = {} by {} (N differs first at {:?})",
                format_rational(&p),
                e.graph,
                near.index
            );
        }
    }
    println!("verdict: {}", ledger.uniform.label());
    Ok(())
}
