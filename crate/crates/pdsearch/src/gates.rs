//! JSON form of a gate list.

use pdsearch_core::circuit::GateList;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateRecord {
    pub kind: &'static str,
    pub target: usize,
    pub controls: Vec<usize>,
    /// Row-major 2×2 entries as `[re, im]`.
    pub matrix: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateListRecord {
    pub width: usize,
    pub gates: Vec<GateRecord>,
}

impl From<&GateList> for GateListRecord {
    fn from(list: &GateList) -> Self {
        Self {
            width: list.width(),
            gates: list
                .gates()
                .iter()
                .map(|g| GateRecord {
                    kind: g.kind.name(),
                    target: g.target,
                    controls: g.controls.clone(),
                    matrix: g.matrix.iter().flatten().map(|z| [z.re, z.im]).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdsearch_core::circuit::build_partial_diffusion_circuit;

    #[test]
    fn single_qubit_circuit() {
        let list = build_partial_diffusion_circuit(1).unwrap();
        let rec = GateListRecord::from(&list);
        assert_eq!(rec.width, 2);
        let kinds: Vec<_> = rec.gates.iter().map(|g| g.kind).collect();
        assert_eq!(kinds, ["H", "X", "CU", "CU", "X", "H"]);
        assert_eq!(rec.gates[2].controls, [0]);
        assert_eq!(rec.gates[2].matrix[0], [-1.0, 0.0]);
        assert!(rec.gates[3].controls.is_empty());
    }
}
