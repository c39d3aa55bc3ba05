use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// The statement being tested, in words.
    pub anchor: String,
    /// Parity case, for identities split by the parities of their arguments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: Option<u64>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), seed: None, claims: Vec::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, id: impl Into<String>, anchor: impl Into<String>, verdict: Verdict, witness: Option<Value>) {
        self.claims.push(Claim { id: id.into(), anchor: anchor.into(), case: None, verdict, witness });
    }

    /// Like `check`, tagged with a parity case.
    pub fn check_case(
        &mut self,
        id: impl Into<String>,
        case: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> Value,
    ) {
        let w = if ok { None } else { Some(witness()) };
        self.claims.push(Claim {
            id: id.into(),
            anchor: anchor.into(),
            case: Some(case.into()),
            verdict: Verdict::from_bool(ok),
            witness: w,
        });
    }

    /// Records a pass/fail claim; the witness is kept only on failure.
    pub fn check(&mut self, id: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) {
        let w = if ok { None } else { Some(witness()) };
        self.push(id, anchor, Verdict::from_bool(ok), w);
    }

    pub fn extend(&mut self, other: Report) {
        self.claims.extend(other.claims);
    }

    pub fn sort(&mut self) {
        self.claims.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}
