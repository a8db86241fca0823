//! Parameter grids: `a:b:k` (k points from a to b inclusive) or a comma list.

/// Spacing used by the `a:b:k` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Geometric,
}

pub fn parse_grid(s: &str, spacing: Spacing) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, k] => {
            let a: f64 = num(a)?;
            let b: f64 = num(b)?;
            let k: usize = k.trim().parse().map_err(|_| format!("bad point count in grid `{s}`"))?;
            if k < 2 {
                return Err(format!("grid `{s}` needs at least 2 points"));
            }
            if spacing == Spacing::Geometric && !(a > 0.0 && b > 0.0) {
                return Err(format!("geometric grid `{s}` needs positive end points"));
            }
            (0..k)
                .map(|i| {
                    let f = i as f64 / (k - 1) as f64;
                    match spacing {
                        _ if i == k - 1 => b,
                        Spacing::Linear => a + (b - a) * f,
                        Spacing::Geometric => a * (b / a).powf(f),
                    }
                })
                .collect()
        }
        [_] => s.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("grid `{s}` is neither `a:b:k` nor a comma list")),
    };
    Ok(grid)
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("cannot parse `{p}` in list `{s}`")))
        .collect()
}

fn num(s: &str) -> Result<f64, String> {
    s.trim().parse().map_err(|_| format!("cannot parse `{s}` as a number"))
}
