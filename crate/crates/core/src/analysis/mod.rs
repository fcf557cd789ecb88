//! Exact security evaluation of encoding matrices under equiprobable keys
//! and source states: perfect secrecy, spoofing of every order, and the
//! verification-oracle games.

mod bits;
mod oracle;
mod spoofing;
mod system;

pub use oracle::{
    offline_bound, online_bound, oracle_equivalence_check, oracle_order, oracle_report,
    oracle_values, voracle_offline_value, voracle_online_value, OracleModel, OracleOrder,
    OracleReport,
};
pub use spoofing::{
    deception_probability, deception_report, security_order, spoofing_bound, DeceptionReport,
    OrderValue,
};
pub use system::{perfect_secrecy_check, SecrecyCheck, SecrecySystem, SecrecyWitness};

use serde::{Deserialize, Serialize};

/// What an attack report evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum AttackResults {
    Classic(DeceptionReport),
    OracleOffline { orders: Vec<OrderValue> },
    OracleOnline { orders: Vec<OrderValue> },
}

/// Report file contents: results plus the digest of the evaluated matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReport {
    pub system_digest: String,
    pub v: usize,
    pub k: usize,
    pub b: usize,
    pub results: AttackResults,
}
