//! N_i and F_i of a two-terminal graph document given as the first
//! argument, or of G(9,15).

use splitrel::constructions::two_terminal_balloon;
use splitrel::io::read_two_terminal;
use splitrel::signature::{sr_polynomial, SplitSignature};

fn main() -> splitrel::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => read_two_terminal(path)?,
        None => two_terminal_balloon(9, 15)?,
    };
    let sig = SplitSignature::of(&g)?;
    println!("{g}");
    println!("{:>3} {:>8} {:>8}", "i", "N_i", "F_i");
    for i in 0..=sig.m {
        println!("{i:>3} {:>8} {:>8}", sig.n_count(i), sig.f(i));
    }
    println!("SR(p) = {}", sr_polynomial(&sig));
    Ok(())
}
