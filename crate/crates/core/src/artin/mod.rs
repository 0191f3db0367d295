//! Local Artinian 𝕂-algebras with residue field 𝕂.

pub mod algebra;
pub mod extension;
pub mod morphism;
pub mod parse;
pub mod tensor;

pub use algebra::{build_truncated_poly, monomial_algebra, ArtinAlgebra, Monomial};
pub use extension::{small_extension_tower, ExtensionMorphism, SmallExtension};
pub use morphism::{fibred_product, residue_field, AlgebraMorphism, FibredProduct};
pub use parse::{parse_ring, ring_from_json, ring_to_json};
pub use tensor::tensor_nilpotent;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(parse_ring("eps").unwrap().dim(), 2);
        let two = build_truncated_poly(&["e1", "e2"], &["e1^2", "e1e2", "e2^2"]).unwrap();
        assert_eq!(two.dim(), 3);
        let t3 = parse_ring("t^3").unwrap();
        let dims: Vec<usize> = t3.filtration().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 1, 0]);
        assert_eq!(t3.nilpotency_index(), 3);
        assert_eq!(t3.labels(), ["t", "t^2"]);
    }

    #[test]
    fn non_cofinite_rejected() {
        assert!(build_truncated_poly(&["x", "y"], &["x^2", "xy"]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = parse_ring("x^2,xy,y^3").unwrap();
        let b = ring_from_json(&ring_to_json(&a).to_string()).unwrap();
        assert_eq!(a.dense_table(), b.dense_table());
        let c = parse_ring(r#"{"vars":["t"],"relations":["t^3"]}"#).unwrap();
        assert_eq!(c.labels(), ["t", "t^2"]);
    }

    #[test]
    fn bad_table_rejected() {
        // e·e = e is not nilpotent
        let r = ring_from_json(r#"{"m_basis":["e"],"table":[[1]]}"#);
        assert!(r.is_err());
    }

    #[test]
    fn towers() {
        let eps = small_extension_tower(&parse_ring("eps").unwrap()).unwrap();
        assert_eq!(eps.len(), 1);
        let t3 = small_extension_tower(&parse_ring("t^3").unwrap()).unwrap();
        assert_eq!(t3.len(), 2);
        assert_eq!(
            t3[0].total.labels()[t3[0].ideal.rref_basis()[0]
                .iter()
                .position(|c| *c != crate::linalg::scalar::zero())
                .unwrap()],
            "t^2"
        );
        assert_eq!(t3[1].total.labels(), ["t"]);
        let xy = small_extension_tower(&parse_ring("x^2,xy,y^2").unwrap()).unwrap();
        assert_eq!(xy.len(), 2);
        assert_eq!(xy[0].quotient.labels(), ["x"]);
        assert_eq!(xy[1].quotient.dim_m(), 0);
    }
}
