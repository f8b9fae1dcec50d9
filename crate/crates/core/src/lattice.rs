//! Smith normal form over the integers, enough to test whether a set of
//! integer vectors is a basis of a saturated sublattice.

/// The nonzero elementary divisors of `a`, in divisibility order.
pub fn elementary_divisors(a: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if !done {
                let (pi, pj) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| m[i][j] != 0)
                    .min_by_key(|&(i, j)| m[i][j].abs())
                    .expect("pivot is nonzero");
                m.swap(t, pi);
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % m[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    divisors
}

/// Rank of an integer matrix.
pub fn rank(a: &[Vec<i64>]) -> usize {
    elementary_divisors(a).len()
}

/// `true` iff the rows are linearly independent and span a saturated
/// sublattice, i.e. every elementary divisor is one.
pub fn is_primitive_basis(rows: &[Vec<i64>]) -> bool {
    let d = elementary_divisors(rows);
    d.len() == rows.len() && d.iter().all(|&x| x == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors() {
        assert_eq!(elementary_divisors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(elementary_divisors(&[vec![1, 0], vec![0, 0]]), vec![1]);
        assert_eq!(elementary_divisors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(elementary_divisors(&[]), Vec::<i64>::new());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive_basis(&[vec![1, -1, 0], vec![0, 1, -1]]));
        assert!(!is_primitive_basis(&[vec![2, -2, 0]]));
        assert!(!is_primitive_basis(&[vec![1, -1, 0], vec![-1, 1, 0]]));
        assert_eq!(rank(&[vec![1, -1, 0], vec![-1, 1, 0]]), 1);
    }
}
