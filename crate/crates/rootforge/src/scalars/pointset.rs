use std::collections::HashMap;

use super::{vec_approx_eq, Scalar};

/// Insertion-ordered set of coordinate vectors with backend-aware dedup.
///
/// Exact backends hash the coordinates directly. Float vectors are hashed by
/// coordinates rounded to six decimals; a value close to a rounding boundary is
/// also looked up under the neighboring key, and every hit is confirmed with an
/// ε-comparison.
#[derive(Clone, Debug)]
pub struct PointSet<S: Scalar> {
    items: Vec<Vec<S>>,
    map: HashMap<Vec<S::Key>, Vec<usize>>,
}

impl<S: Scalar> Default for PointSet<S> {
    fn default() -> Self {
        PointSet { items: Vec::new(), map: HashMap::new() }
    }
}

impl<S: Scalar> PointSet<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points<I: IntoIterator<Item = Vec<S>>>(points: I) -> Self {
        let mut s = Self::new();
        for p in points {
            s.insert(p);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Vec<S>] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Vec<S>> {
        self.items
    }

    fn candidate_keys(p: &[S]) -> Vec<Vec<S::Key>> {
        let base: Vec<S::Key> = p.iter().map(|x| x.key()).collect();
        let mut out = vec![base];
        for (i, x) in p.iter().enumerate() {
            let alts = x.alt_keys();
            if alts.is_empty() {
                continue;
            }
            let mut extra = Vec::new();
            for k in &out {
                for a in &alts {
                    let mut k2 = k.clone();
                    k2[i] = a.clone();
                    extra.push(k2);
                }
            }
            out.extend(extra);
        }
        out
    }

    pub fn find(&self, p: &[S]) -> Option<usize> {
        for k in Self::candidate_keys(p) {
            if let Some(ids) = self.map.get(&k) {
                for &i in ids {
                    if vec_approx_eq(&self.items[i], p) {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    pub fn contains(&self, p: &[S]) -> bool {
        self.find(p).is_some()
    }

    /// Inserts `p` unless an equal point is present; returns its index and
    /// whether it was new.
    pub fn insert(&mut self, p: Vec<S>) -> (usize, bool) {
        if let Some(i) = self.find(&p) {
            return (i, false);
        }
        let i = self.items.len();
        let k: Vec<S::Key> = p.iter().map(|x| x.key()).collect();
        self.map.entry(k).or_default().push(i);
        self.items.push(p);
        (i, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_dedup() {
        let mut s = PointSet::<f64>::new();
        assert!(s.insert(vec![0.1, 0.2]).1);
        assert!(!s.insert(vec![0.1 + 1e-12, 0.2 - 1e-12]).1);
        assert!(s.insert(vec![0.1, 0.2001]).1);
        assert_eq!(s.len(), 2);
    }
}
