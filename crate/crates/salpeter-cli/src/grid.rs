//! Sweep grid parsing.

/// Inclusive linear grid parsed from `start:stop:count`.
#[derive(Clone, Debug)]
pub struct Grid(pub Vec<f64>);

/// Parse `start:stop:count` into an inclusive linear grid. A count of 0
/// yields an empty sweep and 1 yields the single point `start`; otherwise
/// `start` must lie strictly below `stop`.
pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:count, got {text}"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| format!("invalid grid start {}", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| format!("invalid grid stop {}", parts[1]))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| format!("invalid grid count {}", parts[2]))?;
    if !(start.is_finite() && stop.is_finite()) {
        return Err(format!("grid endpoints must be finite, got {start}:{stop}"));
    }
    linspace(start, stop, count).map(Grid)
}

/// Inclusive linear grid with both endpoints represented exactly.
pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, String> {
    match count {
        0 => Ok(Vec::new()),
        1 => Ok(vec![start]),
        _ => {
            if !(stop > start) {
                return Err(format!("grid needs start < stop, got {start}:{stop}"));
            }
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inclusive_grids() {
        let grid = parse_grid("0:1:5").unwrap().0;
        assert_eq!(grid, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_grid("-2:0.99:2").unwrap().0, vec![-2.0, 0.99]);
        assert_eq!(parse_grid("3:9:1").unwrap().0, vec![3.0]);
        assert!(parse_grid("3:9:0").unwrap().0.is_empty());
    }

    #[test]
    fn endpoints_are_exact() {
        let grid = parse_grid("1e-3:3:300").unwrap().0;
        assert_eq!(grid.len(), 300);
        assert_eq!(grid[0], 1e-3);
        assert_eq!(grid[299], 3.0);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:2:3").is_err());
        assert!(parse_grid("a:1:2").is_err());
        assert!(parse_grid("0:b:2").is_err());
        assert!(parse_grid("0:1:many").is_err());
        assert!(parse_grid("1:1:2").is_err());
        assert!(parse_grid("2:1:2").is_err());
        assert!(parse_grid("0:1:-3").is_err());
        assert!(parse_grid("inf:1:2").is_err());
    }
}
