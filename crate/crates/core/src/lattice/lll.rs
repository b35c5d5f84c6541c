use crate::geom::Vector;

/// In-place LLL reduction (δ = 0.99) of a basis of 2 or 3 vectors.
pub fn lll_reduce(b: &mut [Vector]) {
    const DELTA: f64 = 0.99;
    let n = b.len();
    let gram_schmidt = |b: &[Vector]| {
        let mut bs: Vec<Vector> = Vec::with_capacity(n);
        let mut mu = [[0.0f64; 3]; 3];
        for i in 0..n {
            let mut v = b[i];
            for j in 0..i {
                mu[i][j] = b[i].dot(&bs[j]) / bs[j].norm_squared();
                v -= bs[j] * mu[i][j];
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(b);
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = b[j];
                b[k] -= bj * q;
            }
        }
        let (bs, mu) = gram_schmidt(b);
        if bs[k].norm_squared() >= (DELTA - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1].norm_squared() {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}
