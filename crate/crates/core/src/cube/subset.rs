use crate::error::{Error, Result};

/// A subset of the label positions.
pub type Mask = u32;

/// Positions in `t`, increasing.
pub fn members(t: Mask) -> impl Iterator<Item = usize> {
    (0..Mask::BITS as usize).filter(move |&i| t & (1 << i) != 0)
}

/// All subsets of `n` labels, by mask value.
pub fn subsets(n: usize) -> impl Iterator<Item = Mask> {
    0..(1 << n) as Mask
}

pub(crate) fn key(labels: &[String], t: Mask) -> String {
    let mut names: Vec<&str> = members(t).map(|i| labels[i].as_str()).collect();
    names.sort_unstable();
    names.join(",")
}

pub(crate) fn parse_key(labels: &[String], key: &str) -> Result<Mask> {
    let mut m = 0;
    if key.trim().is_empty() {
        return Ok(0);
    }
    for part in key.split(',') {
        let name = part.trim();
        let i = labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Input(format!("unknown label {name:?} in subset key {key:?}")))?;
        if m & (1 << i) != 0 {
            return Err(Error::Input(format!("label {name:?} repeated in subset key {key:?}")));
        }
        m |= 1 << i;
    }
    Ok(m)
}

/// Makes room for position `k`, shifting positions `>= k` up.
pub(crate) fn insert_position(t: Mask, k: usize) -> Mask {
    let low = t & ((1 << k) - 1);
    let high = (t >> k) << (k + 1);
    low | high
}
