use std::fs;

use burnoff_core::families;
use burnoff_core::format::parse_graph;
use burnoff_core::Graph;

use crate::args::{GraphArgs, OptionalGraphArgs};
use crate::error::CliError;

/// A loaded graph plus a short name for headers and chart titles.
pub struct Source {
    pub name: String,
    pub graph: Graph,
}

impl GraphArgs {
    pub fn load(&self) -> Result<Source, CliError> {
        match (&self.file, &self.family) {
            (Some(path), _) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
                let graph = parse_graph(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                Ok(Source {
                    name: path.display().to_string(),
                    graph,
                })
            }
            (None, Some(family)) => family_graph(family),
            (None, None) => Err(CliError::input("give a graph with --file or --family")),
        }
    }
}

impl OptionalGraphArgs {
    pub fn into_required(self) -> Option<GraphArgs> {
        (self.file.is_some() || self.family.is_some()).then_some(GraphArgs {
            file: self.file,
            family: self.family,
        })
    }
}

fn family_graph(words: &[String]) -> Result<Source, CliError> {
    let name = words[0].as_str();
    let size = match words.get(1) {
        Some(text) => Some(
            text.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| CliError::input(format!("family size `{text}` must be a positive integer")))?,
        ),
        None => None,
    };
    let sized = |build: fn(usize) -> burnoff_core::Result<Graph>| -> Result<Source, CliError> {
        let n =
            size.ok_or_else(|| CliError::input(format!("family `{name}` needs a size, e.g. `--family {name} 4`")))?;
        Ok(Source {
            name: format!("{name} {n}"),
            graph: build(n).map_err(|e| CliError::input(e.to_string()))?,
        })
    };
    match name {
        "path" => sized(families::path),
        "cycle" => sized(families::cycle),
        "complete" => sized(families::complete),
        "star" => sized(families::star),
        "k3_pendant" => {
            if size.is_some() {
                return Err(CliError::input("family `k3_pendant` takes no size"));
            }
            Ok(Source {
                name: "k3_pendant".into(),
                graph: families::k3_pendant(),
            })
        }
        other => Err(CliError::input(format!(
            "unknown family `{other}` (expected path, cycle, complete, star or k3_pendant)"
        ))),
    }
}
