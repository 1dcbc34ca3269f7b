//! JSON forms of algebra elements and classes.
//!
//! `{family:{...}, terms:[{n, rep, coeff}]}`, terms in class order.
//! Coefficients are written as exact JSON integers of any size.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Coeff};
use crate::conjugacy::{canonicalize, ConjClass};
use crate::element::{FamilyDescriptor, GroupElement};
use crate::error::{Error, Result};
use crate::exec::Config;

pub(crate) fn coeff_number(v: &Coeff) -> serde_json::Number {
    serde_json::Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    n: usize,
    rep: String,
    coeff: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    family: FamilyDescriptor,
    terms: Vec<TermJson>,
}

/// Class literal `{family, n, rep}` plus the key used for table joins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub family: FamilyDescriptor,
    pub n: usize,
    pub rep: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
}

impl ClassJson {
    pub fn from_class(c: &ConjClass) -> Self {
        ClassJson { family: c.family().clone(), n: c.ambient(), rep: c.key().to_owned(), key: Some(c.key().to_owned()) }
    }

    pub fn to_class(&self, config: &Config) -> Result<ConjClass> {
        let g = GroupElement::parse(&self.family, &self.rep)?;
        if g.ambient() != self.n {
            return Err(Error::AmbientMismatch(self.n, g.ambient()));
        }
        canonicalize(&g, config)
    }
}

impl AlgebraElement {
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = ElementJson {
            family: self.family().clone(),
            terms: self
                .terms()
                .map(|(c, v)| TermJson { n: c.ambient(), rep: c.key().to_owned(), coeff: coeff_number(v) })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain struct serializes")
    }

    /// Pretty JSON; identical elements give identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("value serializes")
    }

    pub fn from_json(text: &str, config: &Config) -> Result<AlgebraElement> {
        let doc: ElementJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let c = ClassJson { family: doc.family.clone(), n: t.n, rep: t.rep, key: None }.to_class(config)?;
            let v = Coeff::from_str(&t.coeff.to_string()).map_err(|e| Error::Parse(e.to_string()))?;
            terms.push((c, v));
        }
        AlgebraElement::from_terms(&doc.family, terms)
    }
}
