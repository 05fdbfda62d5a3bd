//! Bipartite matching by augmenting paths.

/// Matches every left vertex to a distinct right vertex from its candidate
/// list, trying candidates in list order. Returns `None` if some left vertex
/// cannot be matched.
pub(crate) fn saturating_matching(left: &[Vec<usize>], right_count: usize) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_count];
    for l in 0..left.len() {
        let mut seen = vec![false; right_count];
        if !augment(l, left, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![usize::MAX; left.len()];
    for (rt, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            out[*l] = rt;
        }
    }
    Some(out)
}

fn augment(l: usize, left: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &rt in &left[l] {
        if seen[rt] {
            continue;
        }
        seen[rt] = true;
        if owner[rt].is_none_or(|o| augment(o, left, owner, seen)) {
            owner[rt] = Some(l);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_augmenting_path() {
        let left = vec![vec![0, 1], vec![0]];
        assert_eq!(saturating_matching(&left, 2), Some(vec![1, 0]));
        assert_eq!(saturating_matching(&[vec![0], vec![0]], 1), None);
    }
}
