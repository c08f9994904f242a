//! Prints the uniform-winner verdict for every class with at most 7
//! vertices (or the bound given as the first argument).

use std::time::Instant;

use splitrel::constructions::{choose, ClassIndex};
use splitrel::enumeration::{uniform_check, Verdict};
use splitrel::poly::format_rational;

fn main() -> splitrel::Result<()> {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(7);
    for n in 2..=max_n {
        let mut winners = Vec::new();
        for m in n - 1..=choose(n, 2) {
            let start = Instant::now();
            let verdict = uniform_check(n, m)?;
            let note = match &verdict {
                Verdict::Winner { cited: true, .. } => "cited".to_string(),
                Verdict::Winner { .. } => String::new(),
                Verdict::NoWinner {
                    witness,
                    near_zero_index,
                    ..
                } => {
                    format!(
                        "witness p = {}, rival ahead at N_{}",
                        format_rational(witness),
                        near_zero_index.unwrap_or(0)
                    )
                }
            };
            println!(
                "n={n} m={m:>2} {:>6} {:<5} {note} ({:.1?})",
                verdict.label(),
                if ClassIndex::new(n, m).in_i0() {
                    "I_0"
                } else if ClassIndex::new(n, m).in_i1() {
                    "I_1"
                } else {
                    ""
                },
                start.elapsed()
            );
            if verdict.has_winner() {
                winners.push(m);
            }
        }
        println!("n={n}: winners for m in {winners:?}");
    }
    Ok(())
}
