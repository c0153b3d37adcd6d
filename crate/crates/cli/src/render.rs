//! Plain-text to LaTeX/CSV helpers and a small table emitter.

use serde_json::{json, Value};

use crate::config::Format;

/// "1/24 * u0^2 - eps^-2" → "\\frac{1}{24} u_0^{2} - \\varepsilon^{-2}".
pub fn latex_scalar(s: &str) -> String {
    let mut out = String::new();
    for (i, chunk) in s.split(" + ").enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let terms: Vec<String> = chunk
            .split(" - ")
            .map(|term| {
                term.split(" * ")
                    .map(latex_factor)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&terms.join(" - "));
    }
    out
}

fn is_number(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/')
}

fn latex_factor(f: &str) -> String {
    if is_number(f) {
        return match f.split_once('/') {
            Some((n, d)) => match n.strip_prefix('-') {
                Some(n) => format!("-\\frac{{{n}}}{{{d}}}"),
                None => format!("\\frac{{{n}}}{{{d}}}"),
            },
            None => f.to_string(),
        };
    }
    let (base, exp) = match f.split_once('^') {
        Some((b, e)) => (b, Some(e)),
        None => (f, None),
    };
    let base = match base {
        "eps" => "\\varepsilon".to_string(),
        "u0" => "u_0".to_string(),
        b => latex_variables(b),
    };
    match exp {
        Some(e) => format!("{base}^{{{e}}}"),
        None => base,
    }
}

/// "q1^2*p3" → "q_{1}^{2} p_{3}".
pub fn latex_variables(s: &str) -> String {
    s.split('*')
        .map(|v| {
            let (name, exp) = match v.split_once('^') {
                Some((n, e)) => (n, Some(e)),
                None => (v, None),
            };
            let split = name
                .find(|c: char| c.is_ascii_digit())
                .unwrap_or(name.len());
            let (letters, index) = name.split_at(split);
            let mut out = if index.is_empty() {
                letters.to_string()
            } else {
                format!("{letters}_{{{index}}}")
            };
            if let Some(e) = exp {
                out.push_str(&format!("^{{{e}}}"));
            }
            out
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Rows of strings rendered in the requested format. `latex_cols` marks columns
/// holding scalars that should be typeset.
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub latex_cols: Vec<bool>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| {
                        self.rows
                            .iter()
                            .map(|r| r[c].chars().count())
                            .chain([self.header[c].chars().count()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                let mut out = vec![format!("# {}", self.title)];
                out.extend(self.notes.iter().map(|n| format!("# {n}")));
                out.push(line(&self.header));
                out.extend(self.rows.iter().map(|r| line(r)));
                out.join("\n") + "\n"
            }
            Format::Csv => {
                let mut out = vec![self
                    .header
                    .iter()
                    .map(|h| csv_field(h))
                    .collect::<Vec<_>>()
                    .join(",")];
                out.extend(
                    self.rows
                        .iter()
                        .map(|r| r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")),
                );
                out.join("\n") + "\n"
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            self.header
                                .iter()
                                .zip(r)
                                .map(|(h, c)| (h.clone(), Value::String(c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                let doc = json!({"title": self.title, "notes": self.notes, "rows": rows});
                serde_json::to_string_pretty(&doc).expect("json") + "\n"
            }
            Format::Latex => {
                let cols = "l".repeat(self.header.len());
                let mut out = vec![format!("% {}", self.title)];
                out.extend(self.notes.iter().map(|n| format!("% {n}")));
                out.push(format!("\\begin{{tabular}}{{{cols}}}"));
                out.push(format!("{} \\\\", self.header.join(" & ")));
                out.push("\\hline".into());
                for r in &self.rows {
                    let cells: Vec<String> = r
                        .iter()
                        .zip(&self.latex_cols)
                        .map(|(c, &math)| {
                            if math {
                                format!("${}$", latex_scalar(c))
                            } else {
                                c.clone()
                            }
                        })
                        .collect();
                    out.push(format!("{} \\\\", cells.join(" & ")));
                }
                out.push("\\end{tabular}".into());
                out.join("\n") + "\n"
            }
        }
    }
}
