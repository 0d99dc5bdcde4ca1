//! Deterministic numerical primitives shared by both models: matrices,
//! softmax/cross-entropy, Xavier init, Adam, and a finite-difference
//! gradient oracle.

pub mod adam;
pub mod matrix;
pub mod ops;
pub mod rng;

pub use adam::AdamState;
pub use matrix::Matrix;
pub use rng::RngSeed;

/// A model's parameters viewed as an indexed list of named tensors.
///
/// Powers the generic plumbing: Adam stepping, checkpoint blobs, and the
/// finite-difference oracle all iterate tensors through this trait.
pub trait TensorSet {
    fn tensor_names(&self) -> Vec<&'static str>;
    fn tensor(&self, idx: usize) -> &[f64];
    fn tensor_mut(&mut self, idx: usize) -> &mut [f64];
    /// (rows, cols); bias vectors report (1, len).
    fn tensor_dims(&self, idx: usize) -> (usize, usize);

    fn num_tensors(&self) -> usize {
        self.tensor_names().len()
    }

    fn all_finite(&self) -> bool {
        (0..self.num_tensors()).all(|t| self.tensor(t).iter().all(|x| x.is_finite()))
    }
}
