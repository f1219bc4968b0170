/// Caps on enumeration work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Enumerated tuples: polynomials, pairs, samples, compositions.
    pub tuples: u64,
    /// Stored tables: distinct functions, group elements, span elements.
    pub tables: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { tuples: 10_000_000, tables: 1_000_000 }
    }
}

impl Budget {
    pub fn new(tuples: u64, tables: u64) -> Budget {
        Budget { tuples, tables }
    }

    pub fn large() -> Budget {
        Budget { tuples: 100_000_000, tables: 10_000_000 }
    }
}
