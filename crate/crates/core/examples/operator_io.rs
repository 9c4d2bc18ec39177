//! Write an operator to text and JSON, then read both back.

use pauli_ops::io::{parse_json, parse_text, sym_to_text, to_json, to_text};
use pauli_ops::models::{initial_operator, Boundary};
use pauli_ops::{Operator, SymOperator1D};

fn main() -> pauli_ops::Result<()> {
    let o: Operator = initial_operator("energy_current_xxx", 4, Boundary::Open)?;
    let text = to_text(&o);
    print!("{text}");
    assert_eq!(parse_text::<u64>(&text)?.into_full(), o);

    let json = to_json(&o);
    println!("{json}");
    assert_eq!(parse_json::<u64>(&json)?.into_full(), o);

    let ring: Operator = initial_operator("energy_current_xxx", 6, Boundary::Periodic)?;
    let sym = SymOperator1D::from_operator(&ring)?;
    print!("{}", sym_to_text(&sym));
    Ok(())
}
