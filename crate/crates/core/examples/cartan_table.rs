//! Bounds on T for the classical Cartan domains, as CSV.

use polysqueeze::cli::cartan_table;

fn main() {
    let max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    match cartan_table(max) {
        Ok(csv) => print!("{csv}"),
        Err(e) => eprintln!("{}", e.message),
    }
}
