//! Two small rational matrices with printed reference values: one where the
//! weak CMP and weak MPD inverses coincide although `A†AXA ≠ AXAA†`, and a
//! Core-EP matrix for which `A†AXA ≠ AXAA†` still holds.

use crate::matcore::Mat;

/// A square matrix, a minimal rank weak Drazin inverse `X` of it, and known
/// values derived from the pair.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub a: Mat,
    pub x: Mat,
    pub pinv: Mat,
    /// `ind(A)`
    pub index: usize,
    pub expected: Vec<(&'static str, Mat)>,
}

impl Fixture {
    pub fn expected(&self, key: &str) -> Option<&Mat> {
        self.expected.iter().find(|(k, _)| *k == key).map(|(_, m)| m)
    }
}

/// Weak CMP equals weak MPD, both `[[½,½,0,0],[½,½,0,0],0,0]`, while
/// `A†AXA ≠ AXAA†`.
pub fn wmpd_not_wcep() -> Fixture {
    Fixture {
        name: "wmpd-not-wcep",
        a: Mat::from_real_rows(&[
            [1.0, 1.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        x: Mat::from_real_rows(&[
            [1.0, 1.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        pinv: Mat::from_real_rows(&[
            [0.5, 0.5, 0.0, 0.0],
            [0.5, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ]),
        index: 2,
        expected: vec![(
            "weak_cmp",
            Mat::from_real_rows(&[
                [0.5, 0.5, 0.0, 0.0],
                [0.5, 0.5, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
            ]),
        )],
    }
}

/// A Core-EP matrix of index 2 with `A^D = e11`, and an `X` for which
/// `A†AXA ≠ AXAA†`.
pub fn core_ep_not_wcep() -> Fixture {
    let e11 = Mat::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ]);
    Fixture {
        name: "core-ep-not-wcep",
        a: Mat::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        x: Mat::from_real_rows(&[
            [1.0, -1.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        pinv: Mat::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]),
        index: 2,
        expected: vec![("drazin", e11.clone()), ("core_ep_side", e11)],
    }
}

pub fn all() -> Vec<Fixture> {
    vec![wmpd_not_wcep(), core_ep_not_wcep()]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
