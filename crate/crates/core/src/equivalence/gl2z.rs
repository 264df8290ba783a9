use crate::mat2::Mat2;

fn preference(p: &Mat2) -> (i64, i64, usize, [i64; 4]) {
    let e = [p.0[0][0], p.0[0][1], p.0[1][0], p.0[1][1]];
    let negatives = e.iter().filter(|x| **x < 0).count();
    (
        e.iter().map(|x| x.abs()).max().unwrap_or(0),
        e.iter().map(|x| x.abs()).sum(),
        negatives,
        e.map(|x| -x),
    )
}

/// Every `P` with entries in `[-bound, bound]`, `det P = ±1` and
/// `P·A = A'·P`, smallest first (max entry, then entry sum, then fewest
/// negative entries).
pub fn all_gl2z_conjugators(a: Mat2, a_prime: Mat2, bound: i64) -> Vec<Mat2> {
    if a.trace() != a_prime.trace() || a.det() != a_prime.det() || bound < 1 {
        return Vec::new();
    }
    let r = -bound..=bound;
    let mut out = Vec::new();
    for p00 in r.clone() {
        for p01 in r.clone() {
            for p10 in r.clone() {
                for p11 in r.clone() {
                    let p = Mat2::new(p00, p01, p10, p11);
                    if p.is_unimodular() && p * a == a_prime * p {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort_by_key(preference);
    out
}

/// First conjugator in the box in the order of [`all_gl2z_conjugators`].
pub fn search_gl2z_conjugator(a: Mat2, a_prime: Mat2, bound: i64) -> Option<Mat2> {
    all_gl2z_conjugators(a, a_prime, bound).into_iter().next()
}
