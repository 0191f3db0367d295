//! Named builtin DGLAs.

use super::algebra::{Dgla, DglaBuilder};
use super::builders::{build_example_j, build_hochschild_window, build_polyvector, extend_with_d};
use super::graded_algebra::AssocAlgebra;
use crate::error::{Error, Result};
use crate::linalg::scalar::int;
use crate::linalg::Matrix;

pub const FIXTURES: [&str; 6] = ["ABEL1", "D2", "QOBS", "CPLX2", "HW2", "POLY"];

/// `L^1 = 𝕂u`, zero bracket and differential.
pub fn abel1() -> Dgla {
    DglaBuilder::new("ABEL1", 1, 1)
        .degree(1, ["u"])
        .build()
        .expect("valid fixture")
}

/// `L^0 = 𝕂c`, `L^1 = 𝕂u`, `dc = u`, abelian.
pub fn d2() -> Dgla {
    DglaBuilder::new("D2", 0, 1)
        .degree(0, ["c"])
        .degree(1, ["u"])
        .differential(0, Matrix::from_i64(1, 1, &[1]))
        .build()
        .expect("valid fixture")
}

/// `L^1 = 𝕂e`, `L^2 = 𝕂f`, `[e,e] = f`, zero differential.
pub fn qobs() -> Dgla {
    DglaBuilder::new("QOBS", 1, 2)
        .degree(1, ["e"])
        .degree(2, ["f"])
        .bracket(1, 0, 1, 0, 0, int(1))
        .build()
        .expect("valid fixture")
}

pub fn cplx2() -> Dgla {
    build_example_j(2)
        .expect("valid fixture")
        .with_name("CPLX2")
}

/// `𝕂[x]/(x^2)` with basis `1, x`.
pub fn dual_numbers_algebra() -> AssocAlgebra {
    let (o, i) = (int(0), int(1));
    AssocAlgebra {
        labels: vec!["1".into(), "x".into()],
        table: vec![
            vec![i.clone(), o.clone()],
            vec![o.clone(), i.clone()],
            vec![o.clone(), i.clone()],
            vec![o.clone(), o.clone()],
        ],
        unit: vec![i, o],
    }
}

pub fn hw2() -> Dgla {
    build_hochschild_window(&dual_numbers_algebra(), 3)
        .expect("valid fixture")
        .with_name("HW2")
}

pub fn poly() -> Dgla {
    build_polyvector(2, 1)
        .expect("valid fixture")
        .with_name("POLY")
}

/// Looks up `NAME` or `NAME_d` (the extension by the differential).
pub fn fixture(name: &str) -> Result<Dgla> {
    if let Some(base) = name.strip_suffix("_d") {
        return extend_with_d(&fixture(base)?);
    }
    Ok(match name {
        "ABEL1" => abel1(),
        "D2" => d2(),
        "QOBS" => qobs(),
        "CPLX2" => cplx2(),
        "HW2" => hw2(),
        "POLY" => poly(),
        other => return Err(Error::UnknownFixture(other.to_string())),
    })
}

/// Every builtin together with its extension by the differential.
pub fn all_fixture_names() -> Vec<String> {
    FIXTURES
        .iter()
        .flat_map(|n| [n.to_string(), format!("{n}_d")])
        .collect()
}
