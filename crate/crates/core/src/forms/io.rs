//! JSON serialization of polynomial forms.
//!
//! Schema: `{dim, degree, terms: [{indices: [...], monomials: [{exponents:
//! [...], coeff: ...}]}]}` with 1-based differential indices and dense
//! exponent vectors. Callable coefficients are not serializable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::form::DifferentialForm;
use super::poly::Polynomial;
use super::scalar::ScalarField;

#[derive(Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    /// 1-based, strictly increasing differential indices.
    pub indices: Vec<usize>,
    pub monomials: Vec<MonomialJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MonomialJson {
    pub exponents: Vec<u32>,
    pub coeff: f64,
}

pub fn form_to_json(form: &DifferentialForm) -> Result<String> {
    let mut terms = Vec::new();
    for (idx, field) in form.terms() {
        let poly = field
            .as_poly()
            .ok_or_else(|| Error::invalid("callable coefficients are not serializable"))?;
        let monomials = poly
            .terms()
            .iter()
            .map(|(e, c)| MonomialJson { exponents: e.clone(), coeff: *c })
            .collect();
        terms.push(TermJson { indices: idx.iter().map(|i| i + 1).collect(), monomials });
    }
    let doc = FormJson { dim: form.dim(), degree: form.degree(), terms };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn form_from_json(text: &str) -> Result<DifferentialForm> {
    let doc: FormJson = serde_json::from_str(text)?;
    if doc.degree > doc.dim {
        return Err(Error::invalid("degree exceeds dimension"));
    }
    let mut form = DifferentialForm::zero(doc.dim, doc.degree);
    for term in &doc.terms {
        if term.indices.len() != doc.degree {
            return Err(Error::invalid("term index tuple length differs from degree"));
        }
        if !term.indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("term indices must be strictly increasing"));
        }
        if term.indices.iter().any(|&i| i == 0 || i > doc.dim) {
            return Err(Error::invalid("term index out of range 1..dim"));
        }
        let mut poly = Polynomial::zero(doc.dim);
        for m in &term.monomials {
            if m.exponents.len() != doc.dim {
                return Err(Error::invalid("monomial exponent vector has wrong length"));
            }
            poly = poly.add(&Polynomial::monomial(doc.dim, m.exponents.clone(), m.coeff));
        }
        form.add_term(term.indices.iter().map(|i| i - 1).collect(), ScalarField::poly(poly));
    }
    Ok(form)
}
