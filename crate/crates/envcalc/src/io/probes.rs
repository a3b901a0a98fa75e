use crate::error::{Error, Result};
use crate::extreal::Scalar;
use crate::point::{linspace, product_grid, Point};

/// `start:stop:count` as evenly spaced values, or a single value.
pub fn parse_axis<S: Scalar>(spec: &str) -> Result<Vec<S>> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![S::parse_scalar(v)?]),
        [start, stop, count] => {
            let count: usize = count.trim().parse().map_err(|_| Error::parse(format!("bad count in `{spec}`")))?;
            if count == 0 {
                return Err(Error::parse(format!("empty axis `{spec}`")));
            }
            Ok(linspace(&S::parse_scalar(start)?, &S::parse_scalar(stop)?, count))
        }
        _ => Err(Error::parse(format!("expected start:stop:count, got `{spec}`"))),
    }
}

/// Comma-separated axes as a product grid; a single axis is reused for
/// every coordinate.
pub fn parse_probes<S: Scalar>(spec: &str, dim: usize) -> Result<Vec<Point<S>>> {
    let mut axes = spec.split(',').map(parse_axis).collect::<Result<Vec<Vec<S>>>>()?;
    if axes.len() == 1 && dim > 1 {
        axes = vec![axes[0].clone(); dim];
    }
    if axes.len() != dim {
        return Err(Error::parse(format!("`{spec}` has {} axes, expected {dim}", axes.len())));
    }
    Ok(product_grid(&axes))
}
