//! Pre-fractal Sierpiński gasket graphs.

use std::collections::BTreeMap;

use crate::dirichlet::GraphDirichletForm;
use crate::error::{Error, Result};

pub const MAX_LEVEL: u32 = 8;

#[derive(Clone, Debug)]
pub struct GasketGraph {
    pub level: u32,
    pub form: GraphDirichletForm,
    /// Planar coordinates, unit side length overall.
    pub coords: Vec<[f64; 2]>,
    /// Ids of the three outer corners.
    pub corners: [usize; 3],
    /// Lattice coordinates `(a, b)` for position `a e₁ + b e₂`, side `2^level`.
    pub lattice: Vec<(i64, i64)>,
}

/// Level-`k` gasket: `(3^{k+1} + 3) / 2` vertices, `3^{k+1}` unit edges,
/// unit conductances and unit vertex measure.
pub fn sierpinski_gasket_graph(level: u32) -> Result<GasketGraph> {
    if level > MAX_LEVEL {
        return Err(Error::OutOfRange {
            value: level as f64,
            min: 0.0,
            max: MAX_LEVEL as f64,
        });
    }
    // Smallest triangles by their lower-left lattice corner.
    let mut cells = vec![(0i64, 0i64)];
    for k in 0..level {
        let s = 1i64 << k;
        let mut next = Vec::with_capacity(cells.len() * 3);
        for &(a, b) in &cells {
            next.push((a, b));
            next.push((a + s, b));
            next.push((a, b + s));
        }
        cells = next;
    }
    // keyed (b, a) so ids run row by row
    let mut ids: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for &(a, b) in &cells {
        for v in [(a, b), (a + 1, b), (a, b + 1)] {
            ids.insert((v.1, v.0), 0);
        }
    }
    let lattice: Vec<(i64, i64)> = ids.keys().map(|&(b, a)| (a, b)).collect();
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let id = |(a, b): (i64, i64)| ids[&(b, a)];
    let mut pairs = Vec::with_capacity(cells.len() * 3);
    for &(a, b) in &cells {
        let (p, q, r) = (id((a, b)), id((a + 1, b)), id((a, b + 1)));
        pairs.extend([(p, q), (q, r), (p, r)]);
    }
    let n = lattice.len();
    let form = GraphDirichletForm::unweighted(n, &pairs, None)?;
    let side = (1i64 << level) as f64;
    let coords = lattice
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (a as f64 / side, b as f64 / side);
            [a + 0.5 * b, b * 3f64.sqrt() / 2.0]
        })
        .collect();
    let top = 1i64 << level;
    Ok(GasketGraph {
        level,
        form,
        coords,
        corners: [id((0, 0)), id((top, 0)), id((0, top))],
        lattice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for k in 0..=5u32 {
            let g = sierpinski_gasket_graph(k).unwrap();
            assert_eq!(g.form.len(), (3usize.pow(k + 1) + 3) / 2, "level {k}");
            assert_eq!(g.form.edges().len(), 3usize.pow(k + 1));
            assert!(g.form.is_connected());
        }
        assert_eq!(sierpinski_gasket_graph(1).unwrap().form.len(), 6);
        assert_eq!(sierpinski_gasket_graph(1).unwrap().form.edges().len(), 9);
        assert_eq!(sierpinski_gasket_graph(2).unwrap().form.len(), 15);
        assert!(sierpinski_gasket_graph(9).is_err());
    }

    #[test]
    fn degrees_and_corners() {
        let g = sierpinski_gasket_graph(3).unwrap();
        for v in 0..g.form.len() {
            let deg = g.form.degree(v);
            if g.corners.contains(&v) {
                assert_eq!(deg, 2.0);
            } else {
                assert_eq!(deg, 4.0);
            }
        }
        let d = g.form.geodesic_from(g.corners[0]);
        assert_eq!(d[g.corners[1]], 8.0);
        assert_eq!(d[g.corners[2]], 8.0);
    }
}
