//! Incremental reduced row echelon form over an exact field.
//!
//! Rows are indexed by their pivot (leading column). Inserting a vector
//! reduces it against the existing pivots; a nonzero remainder is normalized
//! to a monic row and becomes a new pivot.

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Option<Vec<Scalar>>>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        col < self.width && self.rows[col].is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().enumerate().filter_map(|(i, r)| r.as_ref().map(|_| i))
    }

    pub fn row(&self, pivot: usize) -> Option<&[Scalar]> {
        self.rows.get(pivot).and_then(|r| r.as_deref())
    }

    /// Clears every pivot column of `v` using the stored rows. Only the first
    /// `width` entries take part.
    pub fn reduce(&self, v: &mut [Scalar]) {
        let n = self.width.min(v.len());
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            if let Some(row) = &self.rows[i] {
                let c = -&v[i];
                for j in i..n {
                    if !row[j].is_zero() {
                        v[j] = v[j].add_mul(&c, &row[j]);
                    }
                }
            }
        }
    }

    /// Inserts `v` (length `width`); returns the new pivot, if any.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let lead = v.iter().position(|c| !c.is_zero())?;
        let inv = v[lead].inv().expect("nonzero leading coefficient");
        for c in v[lead..].iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        self.rows[lead] = Some(v);
        Some(lead)
    }

    /// Inserts `v` while tracking a combination vector alongside it. When `v`
    /// reduces to zero the tracked combination is returned: it is a kernel
    /// element of the map that produced the rows.
    pub fn insert_tracked(
        &mut self,
        tracked: &mut [Option<Vec<Scalar>>],
        mut v: Vec<Scalar>,
        mut combo: Vec<Scalar>,
    ) -> Option<Vec<Scalar>> {
        let n = self.width;
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            if let Some(row) = &self.rows[i] {
                let c = -&v[i];
                for j in i..n {
                    if !row[j].is_zero() {
                        v[j] = v[j].add_mul(&c, &row[j]);
                    }
                }
                let t = tracked[i].as_ref().expect("tracked row");
                for (x, y) in combo.iter_mut().zip(t) {
                    if !y.is_zero() {
                        *x = x.add_mul(&c, y);
                    }
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => Some(combo),
            Some(lead) => {
                let inv = v[lead].inv().expect("nonzero leading coefficient");
                for c in v.iter_mut().chain(combo.iter_mut()) {
                    if !c.is_zero() {
                        *c = &*c * &inv;
                    }
                }
                self.rows[lead] = Some(v);
                tracked[lead] = Some(combo);
                None
            }
        }
    }

    /// Eliminates every pivot column from the rows above it, producing the
    /// fully reduced form.
    pub fn fully_reduce(&mut self) {
        let pivots: Vec<usize> = self.pivots().collect();
        for (idx, &p) in pivots.iter().enumerate().rev() {
            let prow = self.rows[p].clone().expect("pivot row");
            for &q in &pivots[..idx] {
                let row = self.rows[q].as_mut().expect("pivot row");
                if row[p].is_zero() {
                    continue;
                }
                let c = -&row[p];
                for j in p..self.width {
                    if !prow[j].is_zero() {
                        row[j] = row[j].add_mul(&c, &prow[j]);
                    }
                }
            }
        }
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.width]
    }
}
