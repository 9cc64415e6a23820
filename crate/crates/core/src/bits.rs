/// Fixed-length bit table indexed from zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct BitTable {
    words: Vec<u64>,
    len: usize,
}

impl BitTable {
    pub(crate) fn new(len: usize) -> Self {
        BitTable {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    /// Grows (or shrinks) the table; new slots are filled with `fill`.
    pub(crate) fn resize(&mut self, len: usize, fill: bool) {
        let old = self.len;
        self.words.resize(len.div_ceil(64), 0);
        self.len = len;
        for i in old..len {
            self.set(i, fill);
        }
        if !len.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_resize() {
        let mut t = BitTable::new(70);
        t.set(0, true);
        t.set(69, true);
        assert!(t.get(0) && t.get(69) && !t.get(68));
        assert_eq!(t.count_ones(), 2);
        t.resize(130, true);
        assert_eq!(t.count_ones(), 2 + 60);
        t.resize(65, false);
        assert_eq!(t.count_ones(), 1);
        assert_eq!(t.len(), 65);
    }
}
