//! Built-in example corpus: declaration blocks plus golden expected
//! outputs used by the test suites.

use crate::session::{parse_session, ParsedSession, SessionError};

/// A named, self-contained set of declarations with pinned expected
/// outputs (stored as JSON fixture text; each expectation carries a
/// `source` note describing how the value was obtained).
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub declarations: &'static str,
    pub expected_json: &'static str,
}

impl CorpusEntry {
    pub fn parse(&self) -> Result<ParsedSession, SessionError> {
        parse_session(self.declarations)
    }

    pub fn expected(&self) -> serde_json::Value {
        serde_json::from_str(self.expected_json).expect("fixture JSON is well-formed")
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "poly1",
        description: "one-variable polynomial ring with its residue field",
        declarations: "\
ring Q1 = poly(field: QQ; vars: x:1)
module K = coker(Q1; rowdeg: [0]; coldeg: [1]; matrix: [[x]])
",
        expected_json: include_str!("../fixtures/poly1.json"),
    },
    CorpusEntry {
        name: "poly2",
        description: "two-variable polynomial ring with its residue field",
        declarations: "\
ring Q2 = poly(field: QQ; vars: x:1, y:1)
module K = coker(Q2; rowdeg: [0]; coldeg: [1,1]; matrix: [[x, y]])
",
        expected_json: include_str!("../fixtures/poly2.json"),
    },
    CorpusEntry {
        name: "poly3",
        description: "three-variable polynomial ring with its residue field",
        declarations: "\
ring Q3 = poly(field: QQ; vars: x:1, y:1, z:1)
module K = coker(Q3; rowdeg: [0]; coldeg: [1,1,1]; matrix: [[x, y, z]])
",
        expected_json: include_str!("../fixtures/poly3.json"),
    },
    CorpusEntry {
        name: "poly4",
        description: "four-variable polynomial ring with its residue field",
        declarations: "\
ring Q4 = poly(field: QQ; vars: x:1, y:1, u:1, v:1)
module K = coker(Q4; rowdeg: [0]; coldeg: [1,1,1,1]; matrix: [[x, y, u, v]])
",
        expected_json: include_str!("../fixtures/poly4.json"),
    },
    CorpusEntry {
        name: "poly-weighted",
        description: "weighted polynomial ring with degrees 1 and 2",
        declarations: "\
ring Qw = poly(field: QQ; vars: x:1, y:2)
module K = coker(Qw; rowdeg: [0]; coldeg: [1,2]; matrix: [[x, y]])
",
        expected_json: include_str!("../fixtures/poly-weighted.json"),
    },
    CorpusEntry {
        name: "koszul-k",
        description: "residue field whose resolution is the Koszul complex",
        declarations: "\
ring Q3 = poly(field: QQ; vars: x:1, y:1, z:1)
module K = coker(Q3; rowdeg: [0]; coldeg: [1,1,1]; matrix: [[x, y, z]])
",
        expected_json: include_str!("../fixtures/koszul-k.json"),
    },
    CorpusEntry {
        name: "example15",
        description: "quadric hypersurface with the 2-periodic module and residue field",
        declarations: "\
ring Q4 = poly(field: QQ; vars: x:1, y:1, u:1, v:1)
ring R = quotient(Q4; x*v - y*u)
module M = coker(R; rowdeg: [0]; coldeg: [1,1]; matrix: [[u, v]])
module K = coker(R; rowdeg: [0]; coldeg: [1,1,1,1]; matrix: [[x, y, u, v]])
",
        expected_json: include_str!("../fixtures/example15.json"),
    },
    CorpusEntry {
        name: "example16",
        description: "four-dimensional determinantal quotient with the cyclic module",
        declarations: "\
ring Q6 = poly(field: QQ; vars: x:1, y:1, u:1, v:1, z:1, w:1)
ring Rp = quotient(Q6; x*v - y*u, x*w - u*z, y*w - v*z)
module Mp = coker(Rp; rowdeg: [0]; coldeg: [1,1,1]; matrix: [[u, v, w]])
",
        expected_json: include_str!("../fixtures/example16.json"),
    },
];

pub fn list_corpus() -> Vec<&'static str> {
    CORPUS.iter().map(|e| e.name).collect()
}

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}
