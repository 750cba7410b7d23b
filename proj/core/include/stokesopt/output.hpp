#ifndef STOKESOPT_OUTPUT_HPP
#define STOKESOPT_OUTPUT_HPP

#include <fstream>
#include <string>

#include "stokesopt/optimizer.hpp"

namespace stokesopt {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Legacy ASCII VTK unstructured grid. Fields are optional; velocity is
// down-sampled to vertex values.
void write_vtk(const TriMesh& mesh, const std::string& path, const ScalarFieldP1* phi = nullptr,
               const VectorFieldP2* u = nullptr, const ScalarPressureP1* p = nullptr);

std::string history_csv_header();
std::string history_csv_row(const EnergyBreakdown& b);

void write_history_csv(const std::vector<EnergyBreakdown>& history, const std::string& path);

// Streams ledger rows as the optimization produces them.
class HistoryCsvWriter {
public:
    explicit HistoryCsvWriter(const std::string& path);
    void append(const EnergyBreakdown& b);

private:
    std::string path_;
    std::ofstream out_;
};

}  // namespace stokesopt

#endif
