//! Near-zero perturbations of G(n,m) for 7 <= n <= 9 and
//! n <= m <= C(n-3,2)+3: the perturbation has more two-tree split subgraphs.

use splitrel::constructions::choose;
use splitrel::engine::SweepOptions;
use splitrel::verify::verify_proposition2;

fn main() -> splitrel::Result<()> {
    for n in 7..=9 {
        for m in n..=choose(n - 3, 2) + 3 {
            let r = verify_proposition2(n, m, &SweepOptions::default())?;
            let d = &r.details;
            println!(
                "({n},{m}) kind {} via {}: N_{} {} -> {}, {} choice classes, {}",
                d["kind"],
                d["argument"].as_str().unwrap_or(""),
                n - 2,
                d["n_balloon"].as_str().unwrap_or(""),
                d["n_variant"].as_str().unwrap_or(""),
                d["choice_classes"],
                r.status
            );
        }
    }
    Ok(())
}
