//! Companion matplotlib scripts. A script only reads the data file written
//! next to it; nothing is recomputed in the plot layer.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Style {
    Line,
    Dashed,
    /// Markers with error bars taken from the named column.
    Errorbar(&'static str),
    Bars,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub column: &'static str,
    pub style: Style,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotSpec {
    pub x: &'static str,
    pub series: Vec<Series>,
    pub xlabel: String,
    pub ylabel: String,
    pub title: String,
    pub logx: bool,
}

impl PlotSpec {
    pub fn new(x: &'static str, xlabel: &str, ylabel: &str, title: &str) -> Self {
        PlotSpec {
            x,
            series: Vec::new(),
            xlabel: xlabel.into(),
            ylabel: ylabel.into(),
            title: title.into(),
            logx: false,
        }
    }

    pub fn with(mut self, column: &'static str, style: Style) -> Self {
        self.series.push(Series { column, style });
        self
    }

    pub fn log_x(mut self) -> Self {
        self.logx = true;
        self
    }

    /// Python source reading `data_file`, resolved relative to the script.
    pub fn script(&self, data_file: &str) -> String {
        let mut s = String::new();
        s.push_str(HEADER);
        let _ = writeln!(s, "DATA = os.path.join(HERE, {})", py_str(data_file));
        s.push_str(LOADER);
        s.push_str("cols = load(DATA)\nfig, ax = plt.subplots()\n");
        let x = py_str(self.x);
        for series in &self.series {
            let y = py_str(series.column);
            let _ = match series.style {
                Style::Line => writeln!(s, "ax.plot(cols[{x}], cols[{y}], label={y})"),
                Style::Dashed => writeln!(s, "ax.plot(cols[{x}], cols[{y}], '--', label={y})"),
                Style::Errorbar(err) => writeln!(
                    s,
                    "ax.errorbar(cols[{x}], cols[{y}], yerr=cols[{}], fmt='o', capsize=3, label={y})",
                    py_str(err)
                ),
                Style::Bars => writeln!(
                    s,
                    "xs = cols[{x}]\nw = xs[1] - xs[0] if len(xs) > 1 else 1.0\nax.bar(xs, cols[{y}], width=w, alpha=0.5, label={y})"
                ),
            };
        }
        if self.logx {
            s.push_str("ax.set_xscale('log')\n");
        }
        let _ = writeln!(s, "ax.set_xlabel({})", py_str(&self.xlabel));
        let _ = writeln!(s, "ax.set_ylabel({})", py_str(&self.ylabel));
        let _ = writeln!(s, "ax.set_title({})", py_str(&self.title));
        s.push_str(FOOTER);
        s
    }
}

fn py_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

const HEADER: &str = "#!/usr/bin/env python3
import csv
import json
import os

import matplotlib
matplotlib.use(\"Agg\")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
";

const LOADER: &str = "

def num(v):
    try:
        return float(v)
    except (TypeError, ValueError):
        return float(\"nan\")


def load(path):
    if path.endswith(\".json\"):
        with open(path) as f:
            rows = json.load(f)[\"rows\"]
    else:
        with open(path, newline=\"\") as f:
            rows = list(csv.DictReader(f))
    if not rows:
        return {}
    return {k: [num(r[k]) for r in rows] for k in rows[0]}


";

const FOOTER: &str = "ax.legend()
fig.tight_layout()
fig.savefig(os.path.splitext(DATA)[0] + \".png\", dpi=150)
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_references_only_the_data_file() {
        let spec = PlotSpec::new("x", "x", "density", "MP(1)")
            .with("density", Style::Line)
            .with("mean", Style::Errorbar("se"));
        let s = spec.script("pdf.csv");
        assert!(s.contains("DATA = os.path.join(HERE, \"pdf.csv\")"));
        assert!(s.contains("yerr=cols[\"se\"]"));
        assert!(!s.contains("numpy"));
    }
}
