//! Reading factorizations, morphisms and modules from files or stdin.
//!
//! Every reader accepts either the bare document or an output envelope of
//! this tool carrying it under `factorization`, `morphism` or `module`, so
//! outputs can be piped straight back in.

use std::fs;
use std::io::Read;

use mfk_core::clifford::GradedCliffordModule;
use mfk_core::mfcore::{MfJson, MorphismJson};
use mfk_core::{MFMorphism, MatrixFactorization};
use serde_json::Value;

use crate::Failure;

pub fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::io(format!("{path}: {e}")))
    }
}

fn read_document(path: &str, key: &str) -> Result<Value, Failure> {
    let text = read_text(path)?;
    let mut v: Value = serde_json::from_str(&text).map_err(mfk_core::Error::from)?;
    if let Some(inner) = v.get_mut(key) {
        return Ok(inner.take());
    }
    Ok(v)
}

pub fn factorization(path: &str) -> Result<MatrixFactorization, Failure> {
    let v = read_document(path, "factorization")?;
    let j: MfJson = serde_json::from_value(v).map_err(mfk_core::Error::from)?;
    Ok(j.to_mf()?)
}

pub fn morphism(path: &str, source: &MatrixFactorization, target: &MatrixFactorization) -> Result<MFMorphism, Failure> {
    let v = read_document(path, "morphism")?;
    let j: MorphismJson = serde_json::from_value(v).map_err(mfk_core::Error::from)?;
    Ok(j.to_morphism(source, target)?)
}

pub fn module(path: &str) -> Result<GradedCliffordModule, Failure> {
    let v = read_document(path, "module")?;
    Ok(GradedCliffordModule::from_json_str(&v.to_string())?)
}

/// Comma-separated list, tolerating spaces.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Variable names in order of first appearance, skipping the imaginary unit.
pub fn infer_vars(expr: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<String>| {
        if !cur.is_empty() {
            let starts_alpha = cur.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if starts_alpha && cur != "i" && !out.contains(cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    };
    for c in expr.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else {
            flush(&mut cur, &mut out);
        }
    }
    flush(&mut cur, &mut out);
    out
}
