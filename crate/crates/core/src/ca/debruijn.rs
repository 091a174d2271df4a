use crate::alphabet::Symbol;

/// A linear de Bruijn sequence: every word of length `n` over `k` symbols
/// occurs exactly once as a factor. Length `k^n + n - 1`.
pub fn de_bruijn(k: usize, n: usize) -> Vec<Symbol> {
    assert!(k >= 1 && n >= 1);
    if k == 1 {
        return vec![0; n];
    }
    let mut a = vec![0usize; n + 1];
    let mut seq = Vec::with_capacity(k.pow(n as u32) + n - 1);
    fkm(1, 1, k, n, &mut a, &mut seq);
    let head: Vec<Symbol> = seq[..n - 1].to_vec();
    seq.extend(head);
    seq
}

fn fkm(t: usize, p: usize, k: usize, n: usize, a: &mut [usize], seq: &mut Vec<Symbol>) {
    if t > n {
        if n % p == 0 {
            seq.extend(a[1..=p].iter().map(|&v| v as Symbol));
        }
        return;
    }
    a[t] = a[t - p];
    fkm(t + 1, p, k, n, a, seq);
    for j in a[t - p] + 1..k {
        a[t] = j;
        fkm(t + 1, t, k, n, a, seq);
    }
}

/// Mixed-radix index of each length-`n` window of `seq`, leftmost digit
/// most significant.
pub fn window_indices(seq: &[Symbol], k: usize, n: usize) -> impl Iterator<Item = usize> + '_ {
    let modulus = k.pow(n as u32 - 1);
    let mut idx = 0usize;
    seq.iter().enumerate().filter_map(move |(j, &s)| {
        idx = (idx % modulus) * k + s as usize;
        (j + 1 >= n).then_some(idx)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_window_once() {
        for (k, n) in [(2, 1), (2, 5), (3, 3), (5, 2), (1, 3)] {
            let s = de_bruijn(k, n);
            let total = k.pow(n as u32);
            assert_eq!(s.len(), total + n - 1);
            let mut seen = vec![false; total];
            for i in window_indices(&s, k, n) {
                assert!(!seen[i]);
                seen[i] = true;
            }
            assert!(seen.iter().all(|&b| b));
        }
    }
}
