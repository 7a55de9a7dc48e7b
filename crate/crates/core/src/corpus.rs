//! The embedded example corpus with expected values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{EULER_HOMOGENEOUS, KOSZUL, LJT, STRONGLY_KOSZUL, STRONG_EULER_AT_0, WEAKLY_KOSZUL, DLT};
use crate::context::VariableContext;
use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::poly::MultiPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub h: String,
    pub vars: Vec<String>,
    /// Free divisors run the full pipeline; others only the Milnor oracle.
    #[serde(default = "default_true")]
    pub free: bool,
    #[serde(default)]
    pub expected_flags: BTreeMap<String, bool>,
    /// `b(s)` checked against every applicable computation route.
    #[serde(default)]
    pub expected_b: Option<String>,
    /// Weights making `h` quasi-homogeneous with an isolated singularity.
    #[serde(default)]
    pub milnor_weights: Option<Vec<String>>,
    /// `b̃(s)` from the Milnor algebra.
    #[serde(default)]
    pub expected_reduced_b: Option<String>,
    #[serde(default)]
    pub check_duality: bool,
    pub provenance: String,
}

fn default_true() -> bool {
    true
}

impl CorpusEntry {
    pub fn context(&self) -> Result<VariableContext> {
        VariableContext::base(&self.vars)
    }

    pub fn poly(&self) -> Result<MultiPoly> {
        parse_poly(&self.h, &self.context()?)
    }

    pub fn weights(&self) -> Result<Option<Vec<Rational>>> {
        self.milnor_weights
            .as_ref()
            .map(|ws| {
                ws.iter()
                    .map(|w| w.parse::<Rational>().map_err(|_| Error::Input(format!("invalid weight `{w}`"))))
                    .collect()
            })
            .transpose()
    }
}

fn flags(pairs: &[(&str, bool)]) -> BTreeMap<String, bool> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn all_true() -> BTreeMap<String, bool> {
    flags(&[
        (EULER_HOMOGENEOUS, true),
        (STRONG_EULER_AT_0, true),
        (KOSZUL, true),
        (WEAKLY_KOSZUL, true),
        (STRONGLY_KOSZUL, true),
        (LJT, true),
        (DLT, true),
    ])
}

#[allow(clippy::too_many_arguments)]
fn entry(
    name: &str,
    h: &str,
    vars: &[&str],
    expected_flags: BTreeMap<String, bool>,
    expected_b: Option<&str>,
    weights: Option<&[&str]>,
    expected_reduced_b: Option<&str>,
    provenance: &str,
) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        h: h.into(),
        vars: vars.iter().map(|v| v.to_string()).collect(),
        free: true,
        expected_flags,
        check_duality: expected_b.is_some(),
        expected_b: expected_b.map(str::to_string),
        milnor_weights: weights.map(|ws| ws.iter().map(|w| w.to_string()).collect()),
        expected_reduced_b: expected_reduced_b.map(str::to_string),
        provenance: provenance.into(),
    }
}

pub fn embedded() -> Vec<CorpusEntry> {
    let mut cubic = entry(
        "cubic-cone",
        "x^3 + y^3 + z^3",
        &["x", "y", "z"],
        BTreeMap::new(),
        None,
        Some(&["1/3", "1/3", "1/3"]),
        Some("(s+1)*(s+4/3)*(s+5/3)*(s+2)"),
        "oracle: Milnor algebra of (x^2, y^2, z^2); not free, oracle only",
    );
    cubic.free = false;
    vec![
        entry("smooth", "x", &["x"], all_true(), Some("s+1"), None, None, "oracle: d*x^(s+1) = (s+1)*x^s"),
        entry(
            "normal-crossing-2",
            "x*y",
            &["x", "y"],
            all_true(),
            Some("(s+1)^2"),
            None,
            None,
            "oracle: d1*d2*(xy)^(s+1) = (s+1)^2*(xy)^s",
        ),
        entry(
            "normal-crossing-3",
            "x*y*z",
            &["x", "y", "z"],
            all_true(),
            Some("(s+1)^3"),
            None,
            None,
            "oracle: symbols x*xi1, y*xi2, z*xi3 regular; d1*d2*d3 certificate",
        ),
        entry(
            "cusp",
            "x^2 - y^3",
            &["x", "y"],
            all_true(),
            Some("(s+1)*(s+5/6)*(s+7/6)"),
            Some(&["1/2", "1/3"]),
            Some("(s+5/6)*(s+7/6)"),
            "oracle: functional equation of order 3; Milnor basis {1, y}",
        ),
        entry(
            "three-lines",
            "x*y*(x+y)",
            &["x", "y"],
            all_true(),
            Some("(s+1)^2*(s+2/3)*(s+4/3)"),
            Some(&["1/3", "1/3"]),
            Some("(s+1)*(s+2/3)*(s+4/3)"),
            "oracle: functional equation of order 3; Milnor algebra of dimension 4",
        ),
        entry(
            "four-lines-pencil",
            "x1*x2*(x1+x2)*(x1+x3*x2)",
            &["x1", "x2", "x3"],
            flags(&[(WEAKLY_KOSZUL, true), (KOSZUL, false), (STRONGLY_KOSZUL, false), (LJT, false)]),
            None,
            None,
            None,
            "reference: weakly Koszul free divisor which is not Koszul",
        ),
        entry(
            "non-qh-curve",
            "x^4 + y^5 + x*y^4",
            &["x", "y"],
            flags(&[(KOSZUL, true), (WEAKLY_KOSZUL, true), (STRONGLY_KOSZUL, false), (LJT, false)]),
            None,
            None,
            None,
            "reference: non quasi-homogeneous plane curve, Koszul but not strongly Koszul",
        ),
        cubic,
    ]
}
