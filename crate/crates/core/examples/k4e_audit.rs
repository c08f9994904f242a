//! Tree counts in the K4 - e skeleton argument, recomputed exactly and set
//! against the printed values.

use splitrel::engine::SweepOptions;
use splitrel::verify::verify_lemmas_13_15;

fn main() -> splitrel::Result<()> {
    for (n, m) in [(7, 8), (8, 9), (9, 10)] {
        let r = verify_lemmas_13_15(15, n, m, &SweepOptions::default())?;
        let d = &r.details;
        let s = |k: &str| d[k].as_str().unwrap_or("").to_string();
        println!(
            "({n},{m}) {}: t(G')={} t2(G')={} t(H')={} t2(H')={} N(G)={} N(H)={}",
            r.status,
            s("t_g"),
            s("t2_g"),
            s("t_h"),
            s("t2_h"),
            s("n_balloon"),
            s("n_variant")
        );
        for mismatch in d["stated_mismatches"].as_array().into_iter().flatten() {
            let field = |k: &str| mismatch[k].as_str().unwrap_or("").to_string();
            println!(
                "  {}: printed {} computed {}",
                field("quantity"),
                field("stated"),
                field("computed")
            );
        }
    }
    Ok(())
}
