use std::fmt;
use std::sync::OnceLock;

use super::AdeType;
use crate::{Error, Result};

/// Invariant factors `d1 | d2 | ... | dm` of a finite abelian group, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::Malformed {
                line: 0,
                reason: format!("invariant factors must be >= 2: {factors:?}"),
            });
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Malformed {
                line: 0,
                reason: format!("invariant factors must form a divisibility chain: {factors:?}"),
            });
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
}

impl fmt::Display for AbelianInvariants {
    /// `C2^2`, `C4`, `1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let d = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if run == 1 {
                format!("C{d}")
            } else {
                format!("C{d}^{run}")
            });
            i += run;
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// One column of the stabilizer table: the quotient singularity type, its
/// local group, the group order, the number of exceptional curves and the
/// discriminant group of the root lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerRecord {
    pub ade: AdeType,
    pub group_name: String,
    pub o_x: u64,
    pub c_x: u32,
    pub disc_invariants: AbelianInvariants,
    pub d_x: u64,
}

impl StabilizerRecord {
    pub fn to_record_line(&self) -> String {
        let disc = self
            .disc_invariants
            .factors()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "type={} group={} o={} c={} disc={} d={}",
            self.ade,
            self.group_name,
            self.o_x,
            self.c_x,
            if disc.is_empty() { "-".into() } else { disc },
            self.d_x
        )
    }
}

const GROUP_NAMES: [&str; 12] = [
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "Q8", "Q12", "Q16", "T24", "O48",
];

/// Parses the `key=value` record format, one record per line; `#` starts a comment.
pub fn parse_table1(text: &str) -> Result<Vec<StabilizerRecord>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: String| Error::Malformed {
            line: line_no,
            reason,
        };
        let mut fields = std::collections::BTreeMap::new();
        for tok in line.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| malformed(format!("expected key=value, got {tok:?}")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| malformed(format!("missing field {k}")))
        };
        let num = |k: &str| -> Result<u64> {
            get(k)?
                .parse()
                .map_err(|_| malformed(format!("field {k} is not an integer")))
        };
        let ade: AdeType = get("type")?.parse().map_err(|e| malformed(format!("{e}")))?;
        let group_name = get("group")?.to_string();
        if !GROUP_NAMES.contains(&group_name.as_str()) {
            return Err(malformed(format!("unknown group name {group_name}")));
        }
        let disc_str = get("disc")?;
        let factors = if disc_str == "-" {
            Vec::new()
        } else {
            disc_str
                .split(',')
                .map(|d| d.parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| malformed("bad disc field".into()))?
        };
        let disc_invariants =
            AbelianInvariants::new(factors).map_err(|e| malformed(format!("{e}")))?;
        let c_x = num("c")? as u32;
        let d_x = num("d")?;
        if c_x != ade.rank() {
            return Err(malformed(format!("c = {c_x} differs from rank of {ade}")));
        }
        if d_x != disc_invariants.order() {
            return Err(malformed(format!(
                "d = {d_x} differs from product of invariant factors"
            )));
        }
        out.push(StabilizerRecord {
            ade,
            group_name,
            o_x: num("o")?,
            c_x,
            disc_invariants,
            d_x,
        });
    }
    Ok(out)
}

/// The bundled twelve-type stabilizer table, in column order.
pub fn table1() -> &'static [StabilizerRecord] {
    static TABLE: OnceLock<Vec<StabilizerRecord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let recs = parse_table1(crate::data::TABLE1).expect("bundled table1 parses");
        assert_eq!(recs.len(), 12, "bundled table1 must have 12 records");
        recs
    })
}
