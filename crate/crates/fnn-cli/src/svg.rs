//! Standalone SVG rendering of a neuron's three curve traces.
//!
//! One `<path>` per curve with class names `intention`, `motor` and
//! `sensory`. Coordinates are written with fixed precision and the viewBox
//! is derived from the geometry, so identical inputs produce identical
//! bytes. A `scale(1,-1)` group flips SVG's downward y-axis into the usual
//! mathematical orientation.

use fnn_core::curves::Polyline;
use fnn_core::neuron::NeuronTraces;
use std::fmt::Write;

fn path_data(line: &Polyline) -> String {
    let mut data = String::with_capacity(line.points.len() * 20);
    for (i, p) in line.points.iter().enumerate() {
        let command = if i == 0 { 'M' } else { 'L' };
        let _ = write!(data, "{}{:.4} {:.4}", command, p.x, p.y);
        if i + 1 < line.points.len() {
            data.push(' ');
        }
    }
    data
}

pub fn neuron_svg(traces: &NeuronTraces) -> String {
    let lines = [&traces.intention, &traces.motor, &traces.sensory];
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for line in lines {
        for p in &line.points {
            min_x = min_x.min(p.x);
            max_x = max_x.max(p.x);
            min_y = min_y.min(p.y);
            max_y = max_y.max(p.y);
        }
    }
    let pad = 0.05 * (max_x - min_x).max(max_y - min_y).max(1.0);
    let width = max_x - min_x + 2.0 * pad;
    let height = max_y - min_y + 2.0 * pad;
    let stroke = (width.max(height) / 400.0).max(1e-3);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"{:.4} {:.4} {:.4} {:.4}\" width=\"640\" height=\"640\" \
         preserveAspectRatio=\"xMidYMid meet\">",
        min_x - pad,
        // The flip group negates y, so the box top is -max_y.
        -(max_y + pad),
        width,
        height
    );
    let _ = writeln!(
        svg,
        "  <style>path {{ fill: none; stroke-width: {stroke:.4}; }} \
         .intention {{ stroke: #2e8b57; }} .motor {{ stroke: #1f77b4; }} \
         .sensory {{ stroke: #d62728; }}</style>"
    );
    svg.push_str("  <g transform=\"scale(1,-1)\">\n");
    for (class, line) in [("intention", &traces.intention), ("motor", &traces.motor), ("sensory", &traces.sensory)]
    {
        let _ = writeln!(svg, "    <path class=\"{class}\" d=\"{}\"/>", path_data(line));
    }
    svg.push_str("  </g>\n</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use fnn_core::neuron::{build_neuron, NeuronConfig, UserProfile};
    use std::f64::consts::TAU;

    #[test]
    fn svg_has_three_classed_paths_and_is_deterministic() {
        let neuron =
            build_neuron(&UserProfile::new(2, 3, 50.0), &NeuronConfig::default(), "n1".into()).unwrap();
        let traces = neuron.traces(0.0, TAU, 361).unwrap();
        let svg = neuron_svg(&traces);
        assert_eq!(svg.matches("<path").count(), 3);
        for class in ["intention", "motor", "sensory"] {
            assert!(svg.contains(&format!("class=\"{class}\"")));
        }
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("viewBox="));

        let again = neuron_svg(&neuron.traces(0.0, TAU, 361).unwrap());
        assert_eq!(svg, again);
    }
}
