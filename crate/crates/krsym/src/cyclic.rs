//! Cyclic-sequence utilities: smallest period, rotation order, minimal
//! rotation. Shared by the Eulerian-word machinery and the plane-tree
//! canonical codes.

/// Smallest `p` dividing `len` with `w[i] == w[(i + p) % len]` for all `i`.
/// The empty word has period 0.
pub fn smallest_period<T: PartialEq>(word: &[T]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    for p in 1..=n {
        if n % p != 0 {
            continue;
        }
        if (0..n).all(|i| word[i] == word[(i + p) % n]) {
            return p;
        }
    }
    n
}

/// Order of the rotation symmetry group of a cyclic word:
/// `len / smallest_period`. Empty words rotate trivially.
pub fn rotation_order<T: PartialEq>(word: &[T]) -> usize {
    let n = word.len();
    if n == 0 {
        return 1;
    }
    n / smallest_period(word)
}

/// Index of the lexicographically minimal rotation. Direct comparison of
/// all rotations; words here are short.
pub fn minimal_rotation<T: Ord>(word: &[T]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    let mut best = 0;
    for k in 1..n {
        for i in 0..n {
            match word[(k + i) % n].cmp(&word[(best + i) % n]) {
                std::cmp::Ordering::Less => {
                    best = k;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    best
}

/// The word rotated so its minimal rotation comes first.
pub fn canonical_rotation<T: Ord + Clone>(word: &[T]) -> Vec<T> {
    let k = minimal_rotation(word);
    let mut out = Vec::with_capacity(word.len());
    out.extend_from_slice(&word[k..]);
    out.extend_from_slice(&word[..k]);
    out
}

/// Two words are equal as cyclic sequences.
pub fn cyclic_eq<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && canonical_rotation(a) == canonical_rotation(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_orders() {
        assert_eq!(rotation_order(&["a", "a", "a"]), 3);
        assert_eq!(rotation_order(&["a", "b", "a", "b"]), 2);
        assert_eq!(rotation_order(&["a", "b", "c"]), 1);
        assert_eq!(rotation_order::<u8>(&[]), 1);
    }

    #[test]
    fn minimal_rotation_examples() {
        assert_eq!(minimal_rotation(b"bca"), 2);
        assert_eq!(minimal_rotation(b"aab"), 0);
        assert_eq!(minimal_rotation(b"baa"), 1);
        assert_eq!(canonical_rotation(b"cab"), b"abc".to_vec());
    }

    #[test]
    fn cyclic_equality_is_rotation_invariant() {
        let w = vec![1, 2, 2, 3];
        for k in 0..w.len() {
            let mut r = w.clone();
            r.rotate_left(k);
            assert!(cyclic_eq(&w, &r));
        }
        assert!(!cyclic_eq(&w, &[1, 2, 3, 2]));
    }

    #[test]
    fn periods_on_structured_words() {
        assert_eq!(smallest_period(&[1, 2, 1, 2, 1, 2]), 2);
        assert_eq!(smallest_period(&[7]), 1);
        assert_eq!(smallest_period(&[1, 2, 3, 1, 2]), 5);
    }
}
