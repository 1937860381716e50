//! Output formatting shared by the subcommands.

/// Formats with `sig` significant digits in plain decimal notation; bounds
/// and envelopes are conventionally shown with six.
pub fn format_sig(v: f64, sig: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).clamp(0, 17) as usize;
    format!("{:.*}", decimals, v)
}

/// Left-aligns rows into columns two spaces apart; trailing blanks are
/// trimmed so output bytes do not depend on the widest row.
pub fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{:<width$}  ", cell, width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig(0.5766420071, 6), "0.576642");
        assert_eq!(format_sig(0.36787944117, 6), "0.367879");
        assert_eq!(format_sig(12.3456789, 6), "12.3457");
        assert_eq!(format_sig(0.0001234567, 6), "0.000123457");
        assert_eq!(format_sig(0.0, 6), "0");
    }

    #[test]
    fn alignment_pads_inner_columns_only() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string(), "c".to_string()],
            vec!["aaa".to_string(), "b".to_string(), "cc".to_string()],
        ];
        assert_eq!(align(&rows), "a    bb  c\naaa  b   cc\n");
    }
}
