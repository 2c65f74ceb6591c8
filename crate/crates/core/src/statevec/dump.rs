//! Text circuit dump: one gate per line,
//! `KIND q<i>[ q<j>[ q<k>]] <phase>` with the phase in radians printed to 17
//! significant digits. Lines starting with `#` are comments.

use std::fmt::Write;

use super::gate::{Gate, GateKind};
use crate::error::{Error, Result};

pub fn format_gate(gate: &Gate) -> String {
    let mut line = String::from(gate.kind().name());
    for q in gate.qubits() {
        write!(line, " q{q}").unwrap();
    }
    write!(line, " {:.16e}", gate.phase()).unwrap();
    line
}

pub fn dump_circuit(gates: &[Gate]) -> String {
    let mut out = String::new();
    for g in gates {
        out.push_str(&format_gate(g));
        out.push('\n');
    }
    out
}

/// Dump with a `# <label>` comment line ahead of each section.
pub fn dump_sections<'a>(sections: impl IntoIterator<Item = (&'a str, &'a [Gate])>) -> String {
    let mut out = String::new();
    for (label, gates) in sections {
        writeln!(out, "# {label}").unwrap();
        out.push_str(&dump_circuit(gates));
    }
    out
}

pub fn parse_circuit(text: &str) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        gates.push(parse_line(line).map_err(|msg| Error::Parse { line: idx + 1, msg })?);
    }
    Ok(gates)
}

fn parse_line(line: &str) -> std::result::Result<Gate, String> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let (name, rest) = tokens.split_first().ok_or("empty line")?;
    let kind = GateKind::from_name(name).ok_or_else(|| format!("unknown gate kind `{name}`"))?;
    let (phase_tok, qubit_toks) = rest.split_last().ok_or("missing phase field")?;
    let phase: f64 = phase_tok
        .parse()
        .map_err(|_| format!("bad phase `{phase_tok}`"))?;
    let qubits = qubit_toks
        .iter()
        .map(|t| {
            t.strip_prefix('q')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| format!("bad qubit token `{t}`"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let arity = |n: usize| -> std::result::Result<(), String> {
        if qubits.len() == n {
            Ok(())
        } else {
            Err(format!("{name} takes {n} qubit(s), got {}", qubits.len()))
        }
    };
    Ok(match kind {
        GateKind::H => {
            arity(1)?;
            Gate::H(qubits[0])
        }
        GateKind::X => {
            arity(1)?;
            Gate::X(qubits[0])
        }
        GateKind::S => {
            arity(1)?;
            Gate::S(qubits[0])
        }
        GateKind::U1 => {
            arity(1)?;
            Gate::u1(qubits[0], phase)
        }
        GateKind::CU1 => {
            arity(2)?;
            Gate::cu1(qubits[0], qubits[1], phase)
        }
        GateKind::CCU1 => {
            arity(3)?;
            Gate::ccu1(qubits[0], qubits[1], qubits[2], phase)
        }
        GateKind::MCU1 => {
            if qubits.is_empty() {
                return Err("MCU1 needs at least one qubit".into());
            }
            Gate::MCU1 { qubits, phase }
        }
        GateKind::ConstPhase => {
            arity(0)?;
            Gate::ConstPhase(phase)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn line_format() {
        assert_eq!(
            format_gate(&Gate::cu1(0, 1, 0.5)),
            "CU1 q0 q1 5.0000000000000000e-1"
        );
        assert_eq!(format_gate(&Gate::H(3)), "H q3 0.0000000000000000e0");
        assert_eq!(
            format_gate(&Gate::ConstPhase(-1.0)),
            "CONST_PHASE -1.0000000000000000e0"
        );
    }

    #[test]
    fn comments_and_errors() {
        let text = "# header\nU1 q0 1.5\n\nCCU1 q0 q1 q2 -2e-3\n";
        assert_eq!(
            parse_circuit(text).unwrap(),
            vec![Gate::u1(0, 1.5), Gate::ccu1(0, 1, 2, -2e-3)]
        );
        assert!(matches!(
            parse_circuit("U1 q0 q1 0.1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_circuit("FOO q0 0.1").is_err());
        assert!(parse_circuit("U1 x0 0.1").is_err());
    }

    fn arb_gate() -> impl Strategy<Value = Gate> {
        let phase = -10.0f64..10.0;
        prop_oneof![
            (0usize..8).prop_map(Gate::H),
            (0usize..8).prop_map(Gate::X),
            (0usize..8).prop_map(Gate::S),
            (0usize..8, phase.clone()).prop_map(|(q, p)| Gate::u1(q, p)),
            (0usize..8, 0usize..8, phase.clone()).prop_map(|(a, b, p)| Gate::cu1(a, b, p)),
            (0usize..8, 0usize..8, 0usize..8, phase.clone())
                .prop_map(|(a, b, c, p)| Gate::ccu1(a, b, c, p)),
            (proptest::collection::vec(0usize..8, 4..6), phase.clone())
                .prop_map(|(qubits, phase)| Gate::MCU1 { qubits, phase }),
            phase.prop_map(Gate::ConstPhase),
        ]
    }

    proptest! {
        #[test]
        fn dump_parse_round_trip(gates in proptest::collection::vec(arb_gate(), 0..40)) {
            prop_assert_eq!(parse_circuit(&dump_circuit(&gates)).unwrap(), gates);
        }
    }
}
