//! Graph and labeling arguments.

use std::fs;
use std::path::Path;

use gracelab::families::parse_generator;
use gracelab::graph::Graph;
use gracelab::graph6;
use gracelab::labeling::Labeling;

use crate::CliError;

/// Accepts an edge-list or graph6 file, a generator expression such as
/// `cycle:5`, or an inline graph6 string.
pub fn read_graph(arg: &str) -> Result<Graph, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        return match Graph::parse_edge_list(&text) {
            Ok(g) => Ok(g),
            Err(edge_err) => {
                let first = text.lines().next().unwrap_or("").trim();
                graph6::decode(first).map_err(|_| CliError::Core(edge_err))
            }
        };
    }
    if arg.contains(':') {
        return Ok(parse_generator(arg)?);
    }
    match parse_generator(arg) {
        Ok(g) => Ok(g),
        Err(_) => graph6::decode(arg).map_err(|e| CliError::Usage(format!("cannot read graph `{arg}`: {e}"))),
    }
}

/// `0,3,1,2` or a JSON array.
pub fn read_labeling(arg: &str) -> Result<Labeling, CliError> {
    let body = arg.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad label `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Labeling::new)
}
