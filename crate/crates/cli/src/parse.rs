//! Sweep path specs and grid files.

use num_complex::Complex64;
use scarf2_core::verification::{linspace, GridPoint, ParameterGrid};
use scarf2_core::ComplexScalar;

use crate::CliError;

fn complex_literal(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<ComplexScalar>()
        .map(Complex64::from)
        .map_err(|e| format!("`{}`: {e}", s.trim()))
}

fn range_segment(axis: &str, body: &str) -> Result<Vec<Complex64>, String> {
    let (range, steps) = body
        .rsplit_once(':')
        .ok_or_else(|| format!("`{axis}:{body}`: expected {axis}:start..end:steps"))?;
    let (start, end) = range
        .split_once("..")
        .ok_or_else(|| format!("`{range}`: expected start..end"))?;
    let start: f64 = start.trim().parse().map_err(|_| format!("`{start}` is not a number"))?;
    let end: f64 = end.trim().parse().map_err(|_| format!("`{end}` is not a number"))?;
    let steps: usize = steps
        .trim()
        .parse()
        .map_err(|_| format!("`{steps}` is not a step count"))?;
    if steps == 0 {
        return Err("a path segment needs at least one step".into());
    }
    if !(start.is_finite() && end.is_finite()) {
        return Err(format!("`{range}` is not finite"));
    }
    let points = linspace(start, end, steps);
    Ok(match axis {
        "real" => points.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        _ => points.into_iter().map(|y| Complex64::new(0.0, y)).collect(),
    })
}

/// Parses `real:a..b:steps,imag:c..d:steps` segments and plain complex
/// literals, concatenated in order.
pub fn parse_path(spec: &str) -> Result<Vec<Complex64>, CliError> {
    let mut path = Vec::new();
    for segment in spec.split(',') {
        let segment = segment.trim();
        let parsed = match segment.split_once(':') {
            Some((axis @ ("real" | "imag"), body)) => range_segment(axis, body),
            Some(_) => Err(format!("`{segment}`: unknown segment kind")),
            None => complex_literal(segment).map(|z| vec![z]),
        };
        path.extend(parsed.map_err(|e| CliError::Usage(format!("bad path: {e}")))?);
    }
    if path.is_empty() {
        return Err(CliError::Usage("empty path".into()));
    }
    Ok(path)
}

/// One `alpha,beta` pair per line; blank lines and `#` comments are skipped.
/// Points must be PT-symmetric (real beta, real or imaginary alpha) or
/// Hermitian (`beta = conj alpha`).
pub fn parse_grid(text: &str) -> Result<ParameterGrid, CliError> {
    let mut points = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Usage(format!("grid line {lineno}: {msg}"));
        let (a, b) = content
            .split_once(',')
            .ok_or_else(|| err(format!("expected `alpha,beta`, got `{content}`")))?;
        if b.contains(',') {
            return Err(err(format!("expected two values, got `{content}`")));
        }
        let point = GridPoint::new(complex_literal(a).map_err(err)?, complex_literal(b).map_err(err)?);
        if !(point.is_pt() || point.is_hermitian()) {
            return Err(err(format!("`{content}` is neither PT-symmetric nor Hermitian")));
        }
        points.push(point);
    }
    Ok(ParameterGrid::new(points))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let p = parse_path("real:-1..0:5,imag:0..0.5:5").unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(p[0], Complex64::new(-1.0, 0.0));
        assert_eq!(p[9], Complex64::new(0.0, 0.5));
    }

    #[test]
    fn literals() {
        let p = parse_path("-1, -0.5, 0.1i,0.5i").unwrap();
        assert_eq!(
            p,
            vec![
                Complex64::new(-1.0, 0.0),
                Complex64::new(-0.5, 0.0),
                Complex64::new(0.0, 0.1),
                Complex64::new(0.0, 0.5)
            ]
        );
        assert_eq!(parse_path("0.25i").unwrap().len(), 1);
    }

    #[test]
    fn bad_paths() {
        for bad in ["", "real:-1..0", "real:a..0:3", "real:-1..0:0", "cplx:0..1:2", "1+"] {
            assert!(parse_path(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_lines() {
        let g = parse_grid("# header\n-1.2,-1.1\n\n0.5i, -3  # broken\n-1.5-0.7i,-1.5+0.7i\n").unwrap();
        assert_eq!(g.points.len(), 3);
        let e = parse_grid("-1,-2\nnonsense\n").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let e = parse_grid("-1,-2\n-1,-2,-3\n").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let e = parse_grid("1+2i,3\n").unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
    }
}
