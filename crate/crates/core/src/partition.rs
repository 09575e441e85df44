//! Set partitions: enumeration, refinement, and common refinement.

use std::collections::HashMap;
use std::hash::Hash;

/// Sorts blocks internally and orders blocks by least element.
pub fn normalize<T: Ord + Clone>(partition: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut blocks: Vec<Vec<T>> = partition
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let mut b = b.clone();
            b.sort();
            b
        })
        .collect();
    blocks.sort();
    blocks
}

/// Every partition of `items`, enumerated by restricted growth strings.
pub fn all_partitions<T: Clone + Ord>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; items.len()];
    fn recurse<T: Clone + Ord>(
        items: &[T],
        labels: &mut Vec<usize>,
        i: usize,
        blocks: usize,
        out: &mut Vec<Vec<Vec<T>>>,
    ) {
        if i == items.len() {
            let mut parts = vec![Vec::new(); blocks];
            for (item, &l) in items.iter().zip(labels.iter()) {
                parts[l].push(item.clone());
            }
            out.push(normalize(&parts));
            return;
        }
        for l in 0..=blocks {
            labels[i] = l;
            recurse(items, labels, i + 1, blocks.max(l + 1), out);
        }
    }
    recurse(items, &mut labels, 0, 0, &mut out);
    out
}

/// True when every block of `fine` lies inside a block of `coarse`.
pub fn refines<T: Eq + Hash>(fine: &[Vec<T>], coarse: &[Vec<T>]) -> bool {
    let owner: HashMap<&T, usize> = coarse
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |x| (x, i)))
        .collect();
    fine.iter().all(|b| {
        let mut owners = b.iter().map(|x| owner.get(x));
        match owners.next() {
            Some(Some(first)) => owners.all(|o| o == Some(first)),
            Some(None) => false,
            None => true,
        }
    })
}

/// The nonempty intersections choosing one block from each partition.
pub fn common_refinement<T: Ord + Clone + Hash>(partitions: &[Vec<Vec<T>>]) -> Vec<Vec<T>> {
    let Some(first) = partitions.first() else {
        return Vec::new();
    };
    let mut keyed: HashMap<Vec<usize>, Vec<T>> = HashMap::new();
    for x in first.iter().flatten() {
        let key: Vec<usize> = partitions
            .iter()
            .map(|p| p.iter().position(|b| b.contains(x)).unwrap_or(usize::MAX))
            .collect();
        keyed.entry(key).or_default().push(x.clone());
    }
    normalize(&keyed.into_values().collect::<Vec<_>>())
}

pub fn is_partition_of<T: Ord + Clone>(partition: &[Vec<T>], items: &[T]) -> bool {
    let mut flat: Vec<T> = partition.iter().flatten().cloned().collect();
    let mut want = items.to_vec();
    flat.sort();
    want.sort();
    want.dedup();
    partition.iter().all(|b| !b.is_empty()) && flat == want
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7)
            .map(|n| all_partitions(&(0..n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn refinement_and_meet() {
        let p1 = vec![vec!['a', 'b'], vec!['c']];
        let p2 = vec![vec!['a'], vec!['b', 'c']];
        let meet = common_refinement(&[p1.clone(), p2.clone()]);
        assert_eq!(meet, vec![vec!['a'], vec!['b'], vec!['c']]);
        assert!(refines(&meet, &p1) && refines(&meet, &p2));
        assert!(!refines(&p1, &p2));
        assert_eq!(common_refinement(&[p1.clone(), p1.clone()]), p1);
        assert!(is_partition_of(&p1, &['a', 'b', 'c']));
        assert!(!is_partition_of(&p1, &['a', 'b']));
    }
}
