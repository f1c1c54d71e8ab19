use std::fmt;

use crate::error::{Error, Result};

/// Largest set size accepted by [`enumerate_partitions`] and the scalar
/// cumulant routines (Bell(12) = 4 213 597).
pub const MAX_PARTITION_SIZE: usize = 12;

/// Partition of `{0, .., n-1}`. Blocks are ordered by their least element
/// and each block is ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    fn from_rgs(rgs: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(i);
        }
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Sum of block sizes.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block sizes as bitmasks over the ground set.
    pub fn block_masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().map(|b| b.iter().fold(0u32, |m, &i| m | (1 << i)))
    }

    /// Whether reordering elements with the given parities from `0..n` into
    /// block-concatenation order picks up a Koszul sign of -1.
    pub fn koszul_negative(&self, odd: &[bool]) -> bool {
        let order: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        let mut negative = false;
        for i in 0..order.len() {
            if !odd[order[i]] {
                continue;
            }
            for &later in &order[i + 1..] {
                if odd[later] && later < order[i] {
                    negative = !negative;
                }
            }
        }
        negative
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let items: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

/// Restricted-growth-string enumeration of all set partitions of `0..n`.
/// For `n = 0` it yields the single empty partition.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    // prefix maxima: max(rgs[0..=i])
    maxima: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            rgs: vec![0; n],
            maxima: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.maxima[i - 1] {
                self.rgs[i] += 1;
                self.maxima[i] = self.maxima[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxima[j] = self.maxima[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(SetPartition::from_rgs(&self.rgs))
    }
}

/// All set partitions of a set of `n` elements, `1 <= n <= 12`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_size("set partition", n)?;
    Ok(SetPartitions::new(n).collect())
}

pub(crate) fn check_size(what: &'static str, n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTITION_SIZE {
        return Err(Error::ArityOutOfRange {
            what,
            got: n,
            min: 1,
            max: MAX_PARTITION_SIZE,
        });
    }
    Ok(())
}
