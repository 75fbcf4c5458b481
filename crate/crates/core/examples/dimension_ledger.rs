// Feature dimensions of every descriptor configuration in the protocol
// tables, next to the reference sizes.

use texture_ensemble::ledger::ledger;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rows = ledger();
    for row in &rows {
        println!("{row}");
    }
    let flagged = rows.iter().filter(|r| r.is_discrepancy()).count();
    println!(
        "{} rows, {flagged} reference sizes differ from 59 + 48 = 107 propagation",
        rows.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
