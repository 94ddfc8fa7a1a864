use crate::error::{Error, Result};

/// Least-squares line through `(ln dt, ln err)`; returns `(slope, intercept)`.
pub fn fit_order(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::Data(format!("need at least 2 points, got {}", points.len())));
    }
    if let Some(&(dt, err)) = points
        .iter()
        .find(|(dt, err)| !(*dt > 0.0 && *err > 0.0 && dt.is_finite() && err.is_finite()))
    {
        return Err(Error::Data(format!(
            "points must be positive and finite, got ({dt}, {err})"
        )));
    }
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|(d, e)| (d.ln(), e.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Data("all step sizes are equal".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}
