use crate::analysis::{joint_analysis, AnalysisResult, KeyMode, StateId};
use crate::circuit::Circuit;
use crate::encoder::{encode_miter, Encoding};
use crate::stabilizer::Tableau;

use super::EquivalenceError;

/// Two circuits over one variable space, with XOR/OR output glue.
#[derive(Debug, Clone)]
pub struct MiterEncoding {
    encoding: Encoding,
    a: Circuit,
    b: Circuit,
}

impl MiterEncoding {
    pub fn encoding(&self) -> &Encoding {
        &self.encoding
    }

    pub fn circuit_a(&self) -> &Circuit {
        &self.a
    }

    pub fn circuit_b(&self) -> &Circuit {
        &self.b
    }

    pub fn analysis_a(&self) -> &AnalysisResult {
        &self.encoding.analyses()[0]
    }

    pub fn analysis_b(&self) -> &AnalysisResult {
        &self.encoding.analyses()[1]
    }

    /// Output ids of both circuits for one input, by walking the
    /// transition tables.
    pub fn walk_outputs(&self, input: StateId) -> Option<(StateId, StateId)> {
        Some((
            self.analysis_a().output_of(input)?,
            self.analysis_b().output_of(input)?,
        ))
    }

    /// Inputs on which the transition tables disagree.
    pub fn distinguishing_inputs(&self) -> Vec<StateId> {
        self.analysis_a()
            .input_ids()
            .filter(|&i| match self.walk_outputs(i) {
                Some((x, y)) => x != y,
                None => true,
            })
            .collect()
    }
}

/// Builds the miter in canonical mode.
pub fn build_miter(
    a: &Circuit,
    b: &Circuit,
    inputs: &[Tableau],
) -> Result<MiterEncoding, EquivalenceError> {
    build_miter_with_mode(a, b, inputs, KeyMode::Canonical)
}

/// Raw keys would give one state several ids, so every miter would be
/// satisfiable; `KeyMode::Raw` is rejected.
pub fn build_miter_with_mode(
    a: &Circuit,
    b: &Circuit,
    inputs: &[Tableau],
    mode: KeyMode,
) -> Result<MiterEncoding, EquivalenceError> {
    if mode == KeyMode::Raw {
        return Err(EquivalenceError::RawMode);
    }
    let (ra, rb) = joint_analysis(a, b, inputs, mode)?;
    Ok(MiterEncoding {
        encoding: encode_miter(&ra, &rb),
        a: a.clone(),
        b: b.clone(),
    })
}
