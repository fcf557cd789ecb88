//! Turning a design with v | b into a balanced encoding matrix: every
//! message sits in every column of exactly b/v rows.
//!
//! Each point is split into b/v copies of degree k, which makes the
//! point-block incidence graph k-regular bipartite. A proper k-edge-coloring
//! of that graph then assigns every incidence (x, B) a column, and the
//! colors at each block are exactly 0..k.

mod coloring;
mod matrix;
mod split;

pub use coloring::{edge_color, hopcroft_karp};
pub use matrix::{verify_balanced, BalanceReport, EncodingMatrix};
pub use split::{split_points, SplitGraph};

use crate::designs::BlockDesign;
use crate::{Error, Result};

/// Orders every block of `design` so that the rows form a balanced
/// encoding matrix. Rows follow the design's canonical block order.
pub fn balance(design: &BlockDesign) -> Result<EncodingMatrix> {
    let graph = split_points(design)?;
    let colors = edge_color(&graph)?;
    let mut rows = vec![vec![usize::MAX; design.k()]; design.b()];
    for (e, &(left, block)) in graph.edges().iter().enumerate() {
        rows[block][colors[e]] = graph.point_of(left);
    }
    let matrix = EncodingMatrix::new(design.v(), design.k(), rows)?;
    let report = verify_balanced(&matrix);
    if !report.balanced {
        return Err(Error::Internal(format!(
            "balanced ordering failed its check at {:?}",
            report.witness
        )));
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::complete_design;
    use crate::difference_families::{develop, DifferenceFamily};

    fn cdf(v: usize, blocks: &[&[usize]]) -> BlockDesign {
        let df = DifferenceFamily::new(v, 1, blocks.iter().map(|b| b.to_vec()).collect()).unwrap();
        develop(&df).unwrap()
    }

    #[test]
    fn split_shapes() {
        let g = split_points(&cdf(7, &[&[1, 2, 4]])).unwrap();
        assert_eq!((g.left_count(), g.right_count(), g.edges().len()), (7, 7, 21));
        assert_eq!(g.regular_degree(), Some(3));

        let g = split_points(&cdf(13, &[&[0, 1, 4], &[0, 2, 7]])).unwrap();
        assert_eq!((g.left_count(), g.right_count()), (26, 26));
        assert_eq!(g.regular_degree(), Some(3));

        let g = split_points(&complete_design(5, 3).unwrap()).unwrap();
        assert_eq!((g.left_count(), g.right_count()), (10, 10));
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn copies_take_consecutive_runs() {
        let d = complete_design(5, 3).unwrap();
        let g = split_points(&d).unwrap();
        // blocks through point 0 in order: indices 0..6; first three -> copy 0
        let copies_of_zero: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|&&(l, _)| g.point_of(l) == 0)
            .map(|&(l, r)| (l, r))
            .collect();
        assert_eq!(
            copies_of_zero,
            vec![(0, 0), (0, 1), (0, 2), (1, 3), (1, 4), (1, 5)]
        );
    }

    #[test]
    fn indivisible_design_is_refused() {
        // AG(2,3): 12 lines on 9 points
        let lines = vec![
            vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8],
            vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8],
            vec![0, 4, 8], vec![1, 5, 6], vec![2, 3, 7],
            vec![0, 5, 7], vec![1, 3, 8], vec![2, 4, 6],
        ];
        let d = BlockDesign::new(9, lines).unwrap();
        let err = balance(&d).unwrap_err();
        assert!(matches!(&err, Error::Precondition(m) if m.contains("does not divide")));
    }

    #[test]
    fn non_regular_points_are_refused() {
        let d = BlockDesign::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2]]).unwrap();
        assert!(matches!(split_points(&d), Err(Error::Precondition(_))));
    }

    #[test]
    fn balance_examples() {
        for (design, per_column) in [
            (cdf(7, &[&[1, 2, 4]]), 1),
            (complete_design(5, 3).unwrap(), 2),
            (cdf(13, &[&[0, 1, 4], &[0, 2, 7]]), 2),
        ] {
            let m = balance(&design).unwrap();
            assert_eq!(m.row_sets(), design.blocks());
            let r = verify_balanced(&m);
            assert!(r.balanced);
            assert_eq!(r.expected, Some(per_column));
        }
    }

    #[test]
    fn balance_is_deterministic() {
        let d = complete_design(7, 3).unwrap();
        assert_eq!(balance(&d).unwrap(), balance(&d.clone()).unwrap());
    }
}
