//! Dense bit vectors over F2 and an incremental echelon basis.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

/// Row space kept in echelon form keyed by leading bit.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &mut BitVec) {
        // rows are sorted by leading bit, descending
        for (lead, row) in &self.rows {
            if v.get(*lead) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v`; returns true when the rank went up.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        match v.leading() {
            None => false,
            Some(lead) => {
                let pos = self.rows.partition_point(|(l, _)| *l > lead);
                self.rows.insert(pos, (lead, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of a list of vectors.
pub(crate) fn rank(vectors: impl IntoIterator<Item = BitVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending basis vector `k` to `images[k]`.
pub(crate) fn kernel(images: &[BitVec], domain: usize) -> Vec<BitVec> {
    // Track combinations alongside images.
    let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
    let mut out = Vec::new();
    for (k, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = BitVec::zeros(domain);
        combo.set(k);
        for (lead, row, c) in &pivots {
            if v.get(*lead) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        match v.leading() {
            None => out.push(combo),
            Some(lead) => {
                let pos = pivots.partition_point(|(l, _, _)| *l > lead);
                pivots.insert(pos, (lead, v, combo));
            }
        }
    }
    out
}
