//! Checks `(np)^k -> m(p^n)` with `(k, m) = (1, 1)` for small `n`.

use toa::logics::{check_toa_condition, lookup_logic};
use toa::oracles::Budget;

fn main() {
    for name in ["A", "RMt", "IUMLm", "BIULm"] {
        let report = check_toa_condition(&lookup_logic(name).unwrap(), 6, &[], &Budget::default());
        let statuses: Vec<&str> = report.entries.iter().map(|e| e.verdict.status()).collect();
        println!("{name}: {} ({})", if report.all_proved() { "holds" } else { "open" }, statuses.join(" "));
    }
}
