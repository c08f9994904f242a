//! Balloon graphs, their two-terminal versions and the variants for a class
//! given as `n m` (default 9 15).

use splitrel::constructions::{
    balloon, balloon_profile, max_bridges, printed_max_bridges, two_terminal_balloon, variant,
    VariantKind,
};

fn main() -> splitrel::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, m) = match args[..] {
        [n, m] => (n, m),
        _ => (9, 15),
    };
    println!("B({n},{m}) = {}", balloon(n, m)?);
    let g = two_terminal_balloon(n, m)?;
    println!("G({n},{m}) = {g}");
    let p = balloon_profile(n, m)?;
    println!(
        "bridges {} (radical form {}), skeleton {} vertices, {} edges, edge connectivity {}",
        max_bridges(n, m)?,
        printed_max_bridges(n, m)?,
        p.skeleton_n,
        p.skeleton_m,
        p.skeleton_lambda
    );
    for kind in [VariantKind::AtAnchor, VariantKind::Far, VariantKind::Near] {
        match variant(kind, n, m) {
            Ok(h) => println!("H{}({n},{m}) = {h}", kind.index()),
            Err(e) => println!("H{}({n},{m}): {e}", kind.index()),
        }
    }
    Ok(())
}
