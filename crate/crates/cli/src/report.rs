//! Printed output: aligned text or `key=value` lines carrying the same fields.

use std::fmt::Write as _;

use clap::ValueEnum;
use glueconn::number::format_sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Kv,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Vec<String>)>,
    /// Extra human-readable block appended in text mode only.
    table: Option<String>,
}

pub fn num(x: f64) -> String {
    format_sig(x, 9)
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), vec![value.to_string()]));
        self
    }

    pub fn number(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.field(key, num(value))
    }

    pub fn list<I, T>(&mut self, key: impl Into<String>, values: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        self.fields
            .push((key.into(), values.into_iter().map(|v| v.to_string()).collect()));
        self
    }

    pub fn numbers(&mut self, key: impl Into<String>, values: &[f64]) -> &mut Self {
        self.list(key, values.iter().map(|&x| num(x)))
    }

    pub fn table(&mut self, text: String) -> &mut Self {
        self.table = Some(text);
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        match format {
            OutputFormat::Text => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (key, values) in &self.fields {
                    let _ = writeln!(out, "{key:<width$}  {}", values.join(" "));
                }
                if let Some(table) = &self.table {
                    out.push('\n');
                    out.push_str(table);
                }
            }
            OutputFormat::Kv => {
                for (key, values) in &self.fields {
                    let _ = writeln!(out, "{key}={}", values.join(","));
                }
            }
        }
        out
    }
}
