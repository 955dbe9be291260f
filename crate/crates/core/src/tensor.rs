//! Dense row-major f64 tensors. A tensor is either detached (plain value) or
//! linked to a node on a [`crate::tape::Tape`], in which case operations on it
//! are recorded for reverse-mode differentiation.

use std::rc::Rc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tape::Tape;

#[derive(Clone, Debug)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Rc<Vec<f64>>,
    pub(crate) node: Option<(Tape, usize)>,
    pub(crate) requires_grad: bool,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::Data(format!(
                "tensor shape {:?} implies {} elements, got {}",
                shape,
                numel,
                data.len()
            )));
        }
        Ok(Self {
            shape,
            data: Rc::new(data),
            node: None,
            requires_grad: false,
        })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        let numel: usize = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            data: Rc::new(vec![0.0; numel]),
            node: None,
            requires_grad: false,
        }
    }

    pub fn full(shape: &[usize], value: f64) -> Self {
        let numel: usize = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            data: Rc::new(vec![value; numel]),
            node: None,
            requires_grad: false,
        }
    }

    pub fn scalar(value: f64) -> Self {
        Self {
            shape: vec![1],
            data: Rc::new(vec![value]),
            node: None,
            requires_grad: false,
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self {
            shape: vec![r, c],
            data: Rc::new(data),
            node: None,
            requires_grad: false,
        }
    }

    /// Glorot-uniform initialization with the given fan sizes.
    pub fn glorot(shape: &[usize], fan_in: usize, fan_out: usize, rng: &mut ChaCha8Rng) -> Self {
        let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
        let numel: usize = shape.iter().product();
        let data = (0..numel)
            .map(|_| rng.gen_range(-limit..limit))
            .collect::<Vec<f64>>();
        Self {
            shape: shape.to_vec(),
            data: Rc::new(data),
            node: None,
            requires_grad: false,
        }
    }

    pub(crate) fn from_parts(shape: Vec<usize>, data: Rc<Vec<f64>>) -> Self {
        Self {
            shape,
            data,
            node: None,
            requires_grad: false,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn numel(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_rc(&self) -> Rc<Vec<f64>> {
        Rc::clone(&self.data)
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.data.as_ref().clone()
    }

    pub fn item(&self) -> f64 {
        assert_eq!(self.numel(), 1, "item() on non-scalar tensor");
        self.data[0]
    }

    /// 2-D accessor; panics on rank != 2 or out-of-range indices.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        assert_eq!(self.rank(), 2);
        self.data[i * self.shape[1] + j]
    }

    /// 3-D accessor.
    pub fn at3(&self, i: usize, j: usize, k: usize) -> f64 {
        assert_eq!(self.rank(), 3);
        self.data[(i * self.shape[1] + j) * self.shape[2] + k]
    }

    pub fn requires_grad(&self) -> bool {
        self.requires_grad
    }

    pub fn is_on_tape(&self) -> bool {
        self.node.is_some()
    }

    /// Drops the tape link, keeping the value.
    pub fn detach(&self) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: Rc::clone(&self.data),
            node: None,
            requires_grad: false,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        assert_eq!(self.shape, other.shape, "max_abs_diff shape mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn bitwise_eq(&self, other: &Tensor) -> bool {
        self.shape == other.shape
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    pub(crate) fn with_node(mut self, tape: Tape, id: usize, requires_grad: bool) -> Self {
        self.node = Some((tape, id));
        self.requires_grad = requires_grad;
        self
    }

    pub(crate) fn node_on(&self, tape: &Tape) -> Option<usize> {
        match &self.node {
            Some((t, id)) if t.same_tape(tape) => Some(*id),
            _ => None,
        }
    }
}
