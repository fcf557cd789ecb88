//! Bundled designs, difference families, arrays and parameter-only entries.

use num_bigint::BigUint;
use serde::Serialize;

use crate::apa::{verify_apa, PerpendicularArray};
use crate::combin::Budget;
use crate::designs::{divisibility_check, verify_design, DesignParameters};
use crate::difference_families::verify_df;
use crate::io::{parse_json, pretty_json, ApaFile, CdfFile, DesignFile};
use crate::verification::VerificationReport;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Design,
    Cdf,
    Apa,
    ParamsOnly,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Design => "design",
            EntryKind::Cdf => "cdf",
            EntryKind::Apa => "apa",
            EntryKind::ParamsOnly => "params-only",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Design(DesignFile),
    Cdf(CdfFile),
    Apa(ApaFile),
}

impl Payload {
    pub fn to_json(&self) -> String {
        match self {
            Payload::Design(f) => pretty_json(f),
            Payload::Cdf(f) => pretty_json(f),
            Payload::Apa(f) => pretty_json(f),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: EntryKind,
    /// Parameters of the underlying design; a CDF(v,k,λ) stands for the
    /// 2-(v,k,λ) design it develops into.
    pub params: Option<DesignParameters>,
    pub note: String,
    /// Spoofing security order the construction guarantees.
    pub claimed_order: Option<u32>,
    pub payload: Option<Payload>,
}

impl CatalogEntry {
    /// Whether `build` can turn the payload into an encoding matrix.
    pub fn buildable(&self) -> bool {
        match (&self.payload, &self.params) {
            (Some(Payload::Cdf(_)), _) => true,
            (Some(Payload::Design(_)), Some(p)) => divisibility_check(p).holds,
            _ => false,
        }
    }
}

const CDF_FILES: &[(&str, &str)] = &[
    ("cdf-13-3-1", include_str!("../data/cdf/cdf-13-3-1.json")),
    ("fano-cdf", include_str!("../data/cdf/fano.json")),
    ("biplane-cdf-11-5-2", include_str!("../data/cdf/biplane-11-5-2.json")),
    ("cdf-13-4-1", include_str!("../data/cdf/cdf-13-4-1.json")),
    ("cdf-37-4-1", include_str!("../data/cdf/cdf-37-4-1.json")),
    ("cdf-41-5-1", include_str!("../data/cdf/cdf-41-5-1.json")),
    ("cdf-61-5-1", include_str!("../data/cdf/cdf-61-5-1.json")),
    ("cdf-31-6-1", include_str!("../data/cdf/cdf-31-6-1.json")),
    ("cdf-337-7-1", include_str!("../data/cdf/cdf-337-7-1.json")),
    ("cdf-57-8-1", include_str!("../data/cdf/cdf-57-8-1.json")),
    ("cdf-73-9-1", include_str!("../data/cdf/cdf-73-9-1.json")),
    ("netto-7", include_str!("../data/cdf/netto-7.json")),
    ("netto-13", include_str!("../data/cdf/netto-13.json")),
    ("netto-19", include_str!("../data/cdf/netto-19.json")),
    ("netto-31", include_str!("../data/cdf/netto-31.json")),
    ("netto-37", include_str!("../data/cdf/netto-37.json")),
    ("netto-43", include_str!("../data/cdf/netto-43.json")),
    ("netto-61", include_str!("../data/cdf/netto-61.json")),
    ("netto-67", include_str!("../data/cdf/netto-67.json")),
    ("netto-73", include_str!("../data/cdf/netto-73.json")),
    ("netto-79", include_str!("../data/cdf/netto-79.json")),
    ("netto-97", include_str!("../data/cdf/netto-97.json")),
];

const DESIGN_FILES: &[(&str, &str)] = &[
    ("fano-design", include_str!("../data/design/fano.json")),
    ("complete-5-3", include_str!("../data/design/complete-5-3.json")),
    ("ag-2-3", include_str!("../data/design/ag-2-3.json")),
];

const VAN_REES: &str = include_str!("../data/apa/van-rees.json");

/// Concrete Steiner designs (t, v, k) behind optimal systems.
const STEINER_ROWS: &[(u32, u32, u32)] = &[
    (3, 26, 5),
    (4, 11, 5),
    (4, 23, 7),
    (4, 23, 5),
    (4, 47, 5),
    (4, 83, 5),
    (4, 71, 5),
    (4, 107, 5),
    (4, 131, 5),
    (4, 167, 5),
    (4, 243, 5),
    (5, 12, 6),
    (5, 84, 6),
    (5, 244, 6),
];

/// Large t-(v,k,λ) designs, cataloged by parameters: (t, v, k, λ).
const LARGE_ROWS: &[(u32, u32, u32, u32)] = &[
    (6, 19, 7, 4),
    (6, 22, 7, 8),
    (6, 23, 7, 4),
    (6, 25, 7, 6),
    (6, 32, 7, 6),
    (7, 24, 8, 8),
    (7, 26, 8, 6),
    (7, 33, 8, 10),
    (8, 31, 10, 100),
    (8, 27, 11, 432),
    (8, 36, 11, 1260),
    (8, 40, 11, 1440),
    (8, 27, 12, 1296),
];

fn bundled<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> T {
    parse_json(text, std::path::Path::new(name)).expect("bundled data parses")
}

fn params(t: u32, v: usize, k: usize, lambda: u64) -> DesignParameters {
    DesignParameters::new(t, BigUint::from(v), k as u32, lambda).expect("bundled parameters are admissible")
}

fn cdf_note(name: &str, file: &CdfFile) -> String {
    let k = file.base_blocks[0].len();
    match name {
        "cdf-13-3-1" => "CDF(13,3,1) with base blocks {0,1,4} and {0,2,7}; its two orbits are a \
                           26-row balanced encoding matrix, optimal and 1-fold secure"
            .into(),
        "fano-cdf" => "Singer difference set {1,2,4} mod 7 (Fano plane); optimal, 1-fold secure".into(),
        "biplane-cdf-11-5-2" => "quadratic residues mod 11, an (11,5,2) difference set (biplane); \
                                 near-optimal with lambda = 2, 1-fold secure"
            .into(),
        "cdf-57-8-1" => "Singer difference set of the projective plane of order 7; optimal, 1-fold secure".into(),
        "cdf-337-7-1" => "radical CDF(337,7,1): the subgroup of 7th roots of unity and its cosets by \
                          cubes of the primitive root 10; optimal, 1-fold secure"
            .into(),
        n if n.starts_with("netto-") => format!(
            "Netto triple system CDF({},3,1) from the smallest primitive root; optimal, 1-fold secure",
            file.v
        ),
        _ => format!(
            "CDF({},{},1) with {} base block(s); optimal, 1-fold secure",
            file.v,
            k,
            file.base_blocks.len()
        ),
    }
}

/// Every bundled entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for &(name, text) in CDF_FILES {
        let file: CdfFile = bundled(name, text);
        let k = file.base_blocks[0].len();
        out.push(CatalogEntry {
            name: name.to_string(),
            kind: EntryKind::Cdf,
            params: Some(params(2, file.v, k, file.lambda)),
            note: cdf_note(name, &file),
            claimed_order: Some(1),
            payload: Some(Payload::Cdf(file)),
        });
    }
    for &(name, text) in DESIGN_FILES {
        let file: DesignFile = bundled(name, text);
        let t = file.t.expect("bundled designs declare t") as u32;
        let lambda = file.lambda.expect("bundled designs declare lambda");
        let (note, claimed_order) = match name {
            "fano-design" => ("the Fano plane 2-(7,3,1) as an explicit block list; optimal, 1-fold secure", Some(1)),
            "complete-5-3" => ("all 3-subsets of a 5-set, a 3-(5,3,1) design with v | b; optimal, 2-fold secure", Some(2)),
            _ => ("affine plane of order 3, a 2-(9,3,1) design; 9 does not divide b = 12, so no balanced ordering exists", None),
        };
        out.push(CatalogEntry {
            name: name.to_string(),
            kind: EntryKind::Design,
            params: Some(params(t, file.v, file.k, lambda)),
            note: note.to_string(),
            claimed_order,
            payload: Some(Payload::Design(file)),
        });
    }
    out.push(CatalogEntry {
        name: "van-rees-apa".into(),
        kind: EntryKind::Apa,
        params: None,
        note: "APA_1(2,3,11): base rows (0,1,2), (0,9,7), (0,3,6), (0,4,8), (0,5,10) developed mod 11".into(),
        claimed_order: None,
        payload: Some(Payload::Apa(bundled("van-rees-apa", VAN_REES))),
    });
    for &(t, v, k) in STEINER_ROWS {
        out.push(CatalogEntry {
            name: format!("steiner-{t}-{v}-{k}"),
            kind: EntryKind::ParamsOnly,
            params: Some(params(t, v as usize, k as usize, 1)),
            note: format!("Steiner {t}-({v},{k},1) design; optimal system, {}-fold secure; design not bundled", t - 1),
            claimed_order: Some(t - 1),
            payload: None,
        });
    }
    for &(t, v, k, lambda) in LARGE_ROWS {
        out.push(CatalogEntry {
            name: format!("design-{t}-{v}-{k}-{lambda}"),
            kind: EntryKind::ParamsOnly,
            params: Some(params(t, v as usize, k as usize, lambda as u64)),
            note: format!(
                "{t}-({v},{k},{lambda}) design; b = {lambda} x b_opt, {}-fold secure; design not bundled",
                t - 1
            ),
            claimed_order: Some(t - 1),
            payload: None,
        });
    }
    out
}

pub fn find(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::domain(format!("no catalog entry named {name:?}")))
}

/// Runs the payload's verifier. Parameter-only entries have nothing to check.
pub fn verify_entry(entry: &CatalogEntry, budget: Budget) -> Result<Option<VerificationReport>> {
    Ok(match &entry.payload {
        None => None,
        Some(Payload::Cdf(f)) => Some(verify_df(&f.to_family()?)),
        Some(Payload::Design(f)) => Some(verify_design(&f.to_design()?, f.t.unwrap_or(2), f.lambda, budget)?),
        Some(Payload::Apa(f)) => {
            let array: PerpendicularArray = f.to_array()?;
            Some(verify_apa(&array))
        }
    })
}
