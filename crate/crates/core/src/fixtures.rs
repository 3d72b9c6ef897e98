//! Small cones and polygons used by the tests, benches and the CLI.

use crate::toric::Toric;

pub const TRIANGLE: &[[i64; 2]] = &[[0, 0], [1, 0], [0, 1]];
pub const SQUARE: &[[i64; 2]] = &[[0, 0], [1, 0], [1, 1], [0, 1]];
pub const HEXAGON: &[[i64; 2]] = &[[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]];
pub const RECTANGLE_1X3: &[[i64; 2]] = &[[0, 0], [3, 0], [3, 1], [0, 1]];

/// Generators `(a, 1)` of the cone over a polygon.
pub fn cone_over(vertices: &[[i64; 2]]) -> Vec<Vec<i64>> {
    vertices.iter().map(|v| vec![v[0], v[1], 1]).collect()
}

pub fn octant_generators() -> Vec<Vec<i64>> {
    vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
}

/// The two-dimensional cone spanned by `(1,0)` and `(1,4)`.
pub fn a3_generators() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![1, 4]]
}

fn build(rank: usize, gens: &[Vec<i64>]) -> Toric {
    Toric::from_generators(rank, gens).expect("fixture cone is valid")
}

pub fn octant() -> Toric {
    build(3, &octant_generators())
}

pub fn triangle() -> Toric {
    build(3, &cone_over(TRIANGLE))
}

pub fn square() -> Toric {
    build(3, &cone_over(SQUARE))
}

pub fn hexagon() -> Toric {
    build(3, &cone_over(HEXAGON))
}

pub fn rectangle() -> Toric {
    build(3, &cone_over(RECTANGLE_1X3))
}

pub fn a3() -> Toric {
    build(2, &a3_generators())
}
