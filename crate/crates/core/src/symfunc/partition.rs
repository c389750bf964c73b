use std::fmt;
use std::str::FromStr;

/// Integer partition, stored weakly decreasing with no zero parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// `(r, r-1, ..., 1)`.
    pub fn staircase(r: u32) -> Partition {
        Partition((1..=r).rev().collect())
    }

    /// `(w, ..., w)` with `h` rows.
    pub fn rectangle(h: u32, w: u32) -> Partition {
        if w == 0 {
            Partition::empty()
        } else {
            Partition(vec![w; h as usize])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }
}

/// All partitions of `n` with parts at most `max_part`, in reverse
/// lexicographic order.
pub fn partitions(n: u32, max_part: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = String;

    /// Accepts `"3,2,1"` or `"(3,2,1)"`; rejects non-decreasing input.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad part {t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("parts of {s:?} are not weakly decreasing"));
        }
        Ok(Partition::new(parts))
    }
}
