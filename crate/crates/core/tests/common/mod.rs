#![allow(dead_code)]

use bielliptic::arith::rational::{frac, rat};
use bielliptic::covering::{QuadricIntersectionModel, QuarticCurveModel};
use bielliptic::numfield::{QuarticAlgebra, QuarticElement};

pub const A: [[i64; 4]; 4] = [
    [-1, 11, -66, 396],
    [11, -66, 396, -2520],
    [-66, 396, -2520, 16335],
    [396, -2520, 16335, -105786],
];

pub const B: [[i64; 4]; 4] = [
    [-1, -3, 33, -198],
    [-3, 33, -198, 1188],
    [33, -198, 1188, -7560],
    [-198, 1188, -7560, 49005],
];

/// `y^2 = 3x^4 - 162x^2 - 351x - 729`
pub fn base_quartic() -> QuarticCurveModel {
    QuarticCurveModel::from_ints(3, -162, -351, -729).unwrap()
}

pub fn base_epsilon() -> QuarticElement {
    let k = QuarticAlgebra::new(&base_quartic().quartic()).unwrap();
    QuarticElement::new(&k, [rat(27), rat(29), rat(-1), frac(-1, 3)])
}

pub fn reference_pair() -> QuadricIntersectionModel {
    QuadricIntersectionModel::from_ints(A, B).unwrap()
}
