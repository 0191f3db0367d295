//! Constructions of concrete DGLAs.

pub mod complex_structure;
pub mod extend;
pub mod hochschild;
pub mod polyvector;
pub mod tensor;
pub mod truncate;

pub use complex_structure::build_example_j;
pub use extend::extend_with_d;
pub use hochschild::build_hochschild_window;
pub use polyvector::build_polyvector;
pub use tensor::tensor_with_graded_algebra;
pub use truncate::truncate_positive;
