use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One sign or normalization convention a computation relied on.
#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: &'static str,
    pub text: &'static str,
}

pub const LEDGER: &[LedgerEntry] = &[
    LedgerEntry {
        id: "koszul-sign",
        text: "s(sigma,x): every adjacent swap of arguments of degrees a, b contributes -(-1)^<a,b>",
    },
    LedgerEntry {
        id: "total-degree",
        text: "a map in M^(k,kappa) has total degree (k,kappa); <(k,kappa),(l,lambda)> = kl + <kappa,lambda>",
    },
    LedgerEntry {
        id: "bracket-delta",
        text: "[K1,K2]^delta = j(K1)K2 - (-1)^(k1k2+<kappa1,kappa2>) j(K2)K1; j(K1)K2 inserts K1 into K2, so for n = 0 this is the Gerstenhaber bracket [K2,K1]",
    },
    LedgerEntry {
        id: "bracket-wedge",
        text: "i(K1)K2 = (k1+k2+1)!/((k1+1)!(k2+1)!) alt(j(K1)K2); [K1,K2]^wedge = i(K1)K2 - (-1)^<deg1,deg2> i(K2)K1",
    },
    LedgerEntry {
        id: "suspension",
        text: "E = V (+) W over Z^(1+n), form coordinate first: V at 0, W at 1",
    },
    LedgerEntry {
        id: "bimodule-structure",
        text: "P(X1,X2) = mu(X1,X2), P(X,Y) = lambda(X)Y, P(Y,X) = (-1)^<x,y> rho(X)Y",
    },
    LedgerEntry {
        id: "liemodule-structure",
        text: "P(X1,X2) = mu(X1,X2), P(X,Y) = pi(X)Y, extended alternatingly",
    },
    LedgerEntry {
        id: "cochain-degree",
        text: "an m-cochain is stored in form m-1 and weight (1,c); the reported degree is m",
    },
    LedgerEntry {
        id: "hochschild-constant",
        text: "[P,C]^delta = -1 * explicit Hochschild coboundary (lambda term carries (-1)^<c,x0>)",
    },
    LedgerEntry {
        id: "chevalley-constant",
        text: "[P,C]^wedge = -1 * explicit Chevalley-Eilenberg coboundary",
    },
    LedgerEntry {
        id: "adjoint-differential",
        text: "on E the differential of a structure P of degree theta is X -> [P,X]",
    },
    LedgerEntry {
        id: "d-normalization",
        text: "on A(E) the differential is D = -[mu,.]^wedge",
    },
    LedgerEntry {
        id: "deformation-equation",
        text: "(m+1) P_(m+1) = -[lambda^m] eta(C_lambda)(P_lambda), eta(C)(X) = C(X,...,X)/(k+1)!",
    },
    LedgerEntry {
        id: "theta-parity",
        text: "<theta,theta> odd is required for n > 0; for n = 0 it is accepted with a warning",
    },
];

pub fn ledger(ids: &[&str]) -> Vec<LedgerEntry> {
    ids.iter()
        .map(|id| *LEDGER.iter().find(|e| e.id == *id).expect("known ledger id"))
        .collect()
}

/// A command result: `outputs` is the machine-readable part, `text` the rendering.
#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub task: String,
    pub inputs_digest: String,
    pub status: String,
    pub outputs: BTreeMap<String, Value>,
    pub ledger: Vec<LedgerEntry>,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub exit_code: i32,
}

pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(task: &str, inputs_digest: String, ledger_ids: &[&str]) -> Self {
        Report {
            task: task.to_string(),
            inputs_digest,
            status: "ok".into(),
            outputs: BTreeMap::new(),
            ledger: ledger(ledger_ids),
            text: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.outputs.insert(key.to_string(), serde_json::to_value(v).expect("serializable output"));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.text {
            s.push_str(l);
            s.push('\n');
        }
        s.push_str("conventions:\n");
        for e in &self.ledger {
            s.push_str(&format!("  {}: {}\n", e.id, e.text));
        }
        s
    }
}
