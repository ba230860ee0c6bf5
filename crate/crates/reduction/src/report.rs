use lie_core::rational::fmt_q;
use lie_core::Q;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Match
        } else {
            Self::Mismatch
        }
    }

    pub fn is_match(self) -> bool {
        self == Self::Match
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Match => write!(f, "MATCH"),
            Self::Mismatch => write!(f, "MISMATCH"),
        }
    }
}

/// `1`, `1,0`, or `-` for an empty character.
pub(crate) fn fmt_lambda(l: &[Q]) -> String {
    if l.is_empty() {
        return "-".into();
    }
    l.iter().map(fmt_q).collect::<Vec<_>>().join(",")
}
