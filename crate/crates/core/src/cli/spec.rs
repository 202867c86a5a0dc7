use serde::Deserialize;

use super::format::MatrixFile;
use crate::channel::{
    depolarizing_channel, generalized_pauli_channel, random_unitary_channel, ChannelRep, KrausSet,
    Superoperator,
};
use crate::linalg::ComplexMatrix;

/// Channel description read from a JSON file, tagged by `kind`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    Depolarizing {
        dim: usize,
        p: f64,
    },
    GeneralizedPauli {
        dim: usize,
        probs: Vec<Vec<f64>>,
    },
    RandomUnitary {
        dim: usize,
        unitaries: Vec<MatrixFile>,
        probs: Vec<f64>,
    },
    ExplicitKraus {
        dim: usize,
        operators: Vec<MatrixFile>,
    },
    ExplicitSuperoperator {
        dim: usize,
        matrix: MatrixFile,
    },
}

impl ChannelSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid channel spec: {e}"))
    }

    pub fn dim(&self) -> usize {
        match *self {
            ChannelSpec::Depolarizing { dim, .. }
            | ChannelSpec::GeneralizedPauli { dim, .. }
            | ChannelSpec::RandomUnitary { dim, .. }
            | ChannelSpec::ExplicitKraus { dim, .. }
            | ChannelSpec::ExplicitSuperoperator { dim, .. } => dim,
        }
    }

    /// Builds the channel, checking every payload against `dim`.
    pub fn build(&self) -> Result<ChannelRep, String> {
        let dim = self.dim();
        if dim == 0 {
            return Err("dim must be positive".into());
        }
        let rep = match self {
            ChannelSpec::Depolarizing { p, .. } => {
                depolarizing_channel(dim, *p).map_err(|e| e.to_string())?
            }
            ChannelSpec::GeneralizedPauli { probs, .. } => {
                ChannelRep::Kraus(generalized_pauli_channel(dim, probs).map_err(|e| e.to_string())?)
            }
            ChannelSpec::RandomUnitary {
                unitaries, probs, ..
            } => {
                let us = matrices(unitaries, dim, dim, "unitaries")?;
                ChannelRep::Kraus(random_unitary_channel(&us, probs).map_err(|e| e.to_string())?)
            }
            ChannelSpec::ExplicitKraus { operators, .. } => {
                let ops = matrices(operators, dim, dim, "operators")?;
                ChannelRep::Kraus(KrausSet::new(ops).map_err(|e| e.to_string())?)
            }
            ChannelSpec::ExplicitSuperoperator { matrix, .. } => {
                let m = matrices(std::slice::from_ref(matrix), dim * dim, dim * dim, "matrix")?
                    .remove(0);
                ChannelRep::Superoperator(
                    Superoperator::new(m, dim, dim).map_err(|e| e.to_string())?,
                )
            }
        };
        Ok(rep)
    }
}

fn matrices(
    files: &[MatrixFile],
    rows: usize,
    cols: usize,
    field: &str,
) -> Result<Vec<ComplexMatrix>, String> {
    files
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let m = f.to_matrix().map_err(|e| format!("{field}[{i}]: {e}"))?;
            if m.shape() != (rows, cols) {
                return Err(format!(
                    "{field}[{i}] is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                ));
            }
            Ok(m)
        })
        .collect()
}
