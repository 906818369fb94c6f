//! Exterior-power combinatorics for `Λ^p(Z^k)`.
//!
//! Basis elements are increasing p-subsets of `{1, ..., k}` in
//! lexicographic order. Appending a factor `e_i` on the right and sorting
//! it into place costs one sign per larger element passed.

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.try_into().expect("binomial fits usize")
}

/// `e ∧ e_i` for an increasing subset `e`: `None` when `i` already occurs,
/// otherwise the sign `(-1)^{#{j in e : j > i}}` and the sorted union.
pub fn wedge_append(e: &[usize], i: usize) -> Option<(i8, Vec<usize>)> {
    if e.contains(&i) {
        return None;
    }
    let larger = e.iter().filter(|&&j| j > i).count();
    let sign = if larger % 2 == 0 { 1 } else { -1 };
    let mut out = e.to_vec();
    out.push(i);
    out.sort_unstable();
    Some((sign, out))
}

/// The ordered basis of `Λ^p(Z^k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeBasis {
    k: usize,
    p: usize,
    elements: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(k: usize, p: usize) -> Self {
        let mut elements = Vec::with_capacity(binomial(k, p));
        if p <= k {
            let mut current = Vec::with_capacity(p);
            enumerate_subsets(k, p, 1, &mut current, &mut elements);
        }
        WedgeBasis { k, p, elements }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    /// Position of an increasing subset in lexicographic order.
    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(subset)).ok()
    }
}

fn enumerate_subsets(
    k: usize,
    p: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == p {
        out.push(current.clone());
        return;
    }
    let needed = p - current.len();
    for next in from..=k + 1 - needed {
        current.push(next);
        enumerate_subsets(k, p, next + 1, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn wedge_append_examples() {
        assert_eq!(wedge_append(&[1], 2), Some((1, vec![1, 2])));
        assert_eq!(wedge_append(&[2], 1), Some((-1, vec![1, 2])));
        assert_eq!(wedge_append(&[1, 2], 1), None);
        assert_eq!(wedge_append(&[], 3), Some((1, vec![3])));
        assert_eq!(wedge_append(&[2, 5], 3), Some((-1, vec![2, 3, 5])));
        assert_eq!(wedge_append(&[2, 5], 7), Some((1, vec![2, 5, 7])));
    }

    #[test]
    fn basis_is_lexicographic_and_complete() {
        let b = WedgeBasis::new(4, 2);
        assert_eq!(b.size(), 6);
        assert_eq!(
            b.elements(),
            &[vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        for (idx, e) in b.elements().iter().enumerate() {
            assert_eq!(b.index_of(e), Some(idx));
        }
        assert_eq!(b.index_of(&[1, 5]), None);

        assert_eq!(WedgeBasis::new(3, 0).elements(), &[Vec::<usize>::new()]);
        assert_eq!(WedgeBasis::new(3, 4).size(), 0);
        assert_eq!(WedgeBasis::new(10, 5).size(), 252);
    }
}
