use super::{AssignmentSolution, Objective, Permutation, SolverId};
use crate::error::{Error, Result};
use crate::matrix::CountMatrix;

/// Enumeration is refused above this side (9! = 362 880 permutations).
pub const BRUTEFORCE_LIMIT: usize = 9;

/// Literal enumeration of all permutations in lexicographic order.
///
/// Ties keep the lexicographically smallest mapping.
pub fn solve_bruteforce(matrix: &CountMatrix, objective: Objective) -> Result<AssignmentSolution> {
    let n = matrix.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLargeForEnumeration {
            n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let table: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| matrix.get(i, j)).collect())
        .collect();

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = perm.clone();
    let mut best_value = value_of(&table, &perm);
    while next_permutation(&mut perm) {
        let v = value_of(&table, &perm);
        let better = match objective {
            Objective::Max => v > best_value,
            Objective::Min => v < best_value,
        };
        if better {
            best_value = v;
            best.copy_from_slice(&perm);
        }
    }
    Ok(AssignmentSolution {
        value: best_value,
        permutation: Permutation(best),
        objective,
        solver: SolverId::Oracle,
    })
}

fn value_of(table: &[Vec<u64>], perm: &[usize]) -> u64 {
    perm.iter().enumerate().map(|(i, &j)| table[i][j]).sum()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn additive_matrix_is_constant() {
        let rows: Vec<Vec<u64>> = (0..3)
            .map(|i| (1..=3).map(|j| 3 * i + j).collect())
            .collect();
        let x = CountMatrix::from_rows(&rows).unwrap();
        assert_eq!(solve_bruteforce(&x, Objective::Max).unwrap().value, 15);
        assert_eq!(solve_bruteforce(&x, Objective::Min).unwrap().value, 15);
        // Every permutation ties, so the identity wins.
        let s = solve_bruteforce(&x, Objective::Max).unwrap();
        assert_eq!(s.permutation, Permutation::identity(3));
    }

    #[test]
    fn two_by_two() {
        let x = CountMatrix::from_rows(&[vec![0, 2], vec![3, 1]]).unwrap();
        let max = solve_bruteforce(&x, Objective::Max).unwrap();
        assert_eq!(
            (max.value, max.permutation.to_string().as_str()),
            (5, "(2,1)")
        );
        let min = solve_bruteforce(&x, Objective::Min).unwrap();
        assert_eq!(
            (min.value, min.permutation.to_string().as_str()),
            (1, "(1,2)")
        );
    }

    #[test]
    fn one_by_one_and_guard() {
        let x = CountMatrix::from_rows(&[vec![9]]).unwrap();
        assert_eq!(solve_bruteforce(&x, Objective::Max).unwrap().value, 9);
        assert_eq!(solve_bruteforce(&x, Objective::Min).unwrap().value, 9);
        assert!(matches!(
            solve_bruteforce(&CountMatrix::zeros(10), Objective::Max),
            Err(Error::TooLargeForEnumeration { n: 10, .. })
        ));
    }
}
