use serde::{Deserialize, Serialize};

use super::{Grading, MFMorphism, MatrixFactorization, PolyMatrix};
use crate::exactalg::parse::check_var_name;
use crate::exactalg::{parse_poly, Mode, WeightSystem};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingJson {
    pub weights: Vec<u32>,
    pub degree: u32,
    pub deg1: Vec<i64>,
    pub deg0: Vec<i64>,
}

/// Text form of a factorization; polynomials use the expression grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfJson {
    pub mode: Mode,
    pub vars: Vec<String>,
    pub f: String,
    pub d1: Vec<Vec<String>>,
    pub d0: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingJson>,
}

/// Blocks of a morphism, read in the ring of its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub a1: Vec<Vec<String>>,
    pub a0: Vec<Vec<String>>,
}

fn parse_matrix(
    rows: &[Vec<String>],
    ncols: usize,
    vars: &[String],
    mode: Mode,
    name: &str,
) -> Result<PolyMatrix, Error> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::DimensionMismatch(format!(
                "row {i} of {name} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        out.push(
            row.iter()
                .map(|t| parse_poly(t, vars, mode))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(PolyMatrix::from_rows_shape(vars.len(), out, ncols))
}

fn print_matrix(m: &PolyMatrix, vars: &[String]) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|p| p.to_string_with(vars)).collect())
        .collect()
}

impl MfJson {
    pub fn to_mf(&self) -> Result<MatrixFactorization, Error> {
        for v in &self.vars {
            check_var_name(v)?;
        }
        for (k, v) in self.vars.iter().enumerate() {
            if self.vars[..k].contains(v) {
                return Err(Error::VariableCollision(format!("'{v}' declared twice")));
            }
        }
        let f = parse_poly(&self.f, &self.vars, self.mode)?;
        // d1 is rank0 x rank1, d0 is rank1 x rank0
        let rank0 = self.d1.len();
        let rank1 = self.d0.len();
        let d1 = parse_matrix(&self.d1, rank1, &self.vars, self.mode, "d1")?;
        let d0 = parse_matrix(&self.d0, rank0, &self.vars, self.mode, "d0")?;
        let grading = match &self.grading {
            None => None,
            Some(g) => Some(Grading {
                weights: WeightSystem::new(g.weights.clone(), g.degree)?,
                deg1: g.deg1.clone(),
                deg0: g.deg0.clone(),
            }),
        };
        MatrixFactorization::new(self.mode, self.vars.clone(), f, d1, d0, grading)
    }

    pub fn from_mf(p: &MatrixFactorization) -> Self {
        MfJson {
            mode: p.mode,
            vars: p.vars.clone(),
            f: p.f.to_string_with(&p.vars),
            d1: print_matrix(&p.d1, &p.vars),
            d0: print_matrix(&p.d0, &p.vars),
            grading: p.grading.as_ref().map(|g| GradingJson {
                weights: g.weights.weights.clone(),
                degree: g.weights.degree,
                deg1: g.deg1.clone(),
                deg0: g.deg0.clone(),
            }),
        }
    }
}

impl MorphismJson {
    pub fn to_morphism(&self, source: &MatrixFactorization, target: &MatrixFactorization) -> Result<MFMorphism, Error> {
        let a1 = parse_matrix(&self.a1, source.rank1(), &source.vars, source.mode, "a1")?;
        let a0 = parse_matrix(&self.a0, source.rank0(), &source.vars, source.mode, "a0")?;
        MFMorphism::new(source.clone(), target.clone(), a1, a0)
    }

    pub fn from_morphism(m: &MFMorphism) -> Self {
        MorphismJson {
            a1: print_matrix(&m.a1, &m.source.vars),
            a0: print_matrix(&m.a0, &m.source.vars),
        }
    }
}

impl MatrixFactorization {
    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        serde_json::from_str::<MfJson>(s)?.to_mf()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MfJson::from_mf(self)).expect("serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&MfJson::from_mf(self)).expect("serializable")
    }
}
