#pragma once

#include <logcalc/graph.hpp>
#include <logcalc/graphon.hpp>
#include <logcalc/harness.hpp>
#include <logcalc/margins.hpp>

#include <string>

namespace logcalc {

// Document parsing/rendering. Graphs, graphons and reports travel as JSON
// with stable keys; rationals are "p/q" strings so exact values never pass
// through floats. Parse errors carry the offending field and file context.

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LabeledGraph parse_graph(const std::string& text, const std::string& context = "<input>");
StepGraphon parse_graphon(const std::string& text, const std::string& context = "<input>");
Direction parse_direction(const std::string& text, const std::string& context = "<input>");

// Canonical serialization: vertices sorted lexicographically, edges as
// sorted [min,max] pairs in lexicographic order. parse(render(g)) == g up
// to vertex order, and render is a fixed point on parsed documents.
std::string render_graph(const LabeledGraph& g);
std::string render_graphon(const StepGraphon& w);

enum class ReportFormat { Text, Structured };

std::string render_report(const MarginReport& r, ReportFormat format);
std::string render_report(const BlakleyRoyReport& r, ReportFormat format);
std::string render_report(const CfsAuditReport& r, ReportFormat format);
std::string render_report(const ForcingReport& r, ReportFormat format);
std::string render_report(const AdditivityReport& r, ReportFormat format);
std::string render_report(const DensityValue& r, ReportFormat format);
std::string render_report(const BlockTable& t, ReportFormat format);
std::string render_report(const ProbeReport& r, ReportFormat format);
// include_timings controls the wall-clock field in the structured form;
// leaving it out keeps structured output byte-identical across runs.
std::string render_report(const SuiteReport& r, ReportFormat format, bool include_timings = false);

// Round-trip for the structured forms used by replay tests.
MarginReport parse_margin_report(const std::string& text);
struct SuiteFailure {
    int trial;
    LabeledGraph graph;
    StepGraphon graphon;
    double margin;
};
std::vector<SuiteFailure> parse_suite_failures(const std::string& text);

std::string read_file_or_stdin(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace logcalc
