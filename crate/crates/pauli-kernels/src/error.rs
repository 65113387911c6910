use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("point outside grid hull on axis `{axis}`: {value} not in [{lo}, {hi}]")]
    OutOfHull {
        axis: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("grid too coarse on axis `{axis}`: {nodes} nodes cannot carry a {order}-th derivative stencil")]
    StencilTooCoarse {
        axis: &'static str,
        nodes: usize,
        order: usize,
    },
    #[error("xi must lie in (0, 1), got {0}")]
    XiOutOfRange(f64),
    #[error("invalid spectral point: {0}")]
    InvalidPoint(String),
    #[error("malformed kernel dump: {0}")]
    Dump(String),
}
