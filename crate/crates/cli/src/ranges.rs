//! Parsers for `start:end[:step]` weight ranges and `lo..hi` level ranges.

use cuspdim::{Error, Result};

/// `2:24:2`, `2:13` or a single weight `k`. Inclusive on both ends.
pub fn parse_weights(s: &str) -> Result<Vec<i64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad weight '{t}' in '{s}'")));
    let (start, end, step) = match parts.as_slice() {
        [k] => {
            let k = num(k)?;
            (k, k, 1)
        }
        [a, b] => (num(a)?, num(b)?, 1),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => return Err(Error::Usage(format!("weights must look like start:end[:step], got '{s}'"))),
    };
    if step <= 0 || end < start {
        return Err(Error::Usage(format!("empty weight range '{s}'")));
    }
    Ok((start..=end).step_by(step as usize).collect())
}

/// `lo..hi`, inclusive, or a single level.
pub fn parse_levels(s: &str) -> Result<(u64, u64)> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Usage(format!("bad level '{t}' in '{s}'")));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo == 0 || hi < lo {
        return Err(Error::Usage(format!("level range must satisfy 1 <= lo <= hi, got '{s}'")));
    }
    Ok((lo, hi))
}
