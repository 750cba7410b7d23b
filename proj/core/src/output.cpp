#include "stokesopt/output.hpp"

#include <charconv>
#include <system_error>

namespace stokesopt {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_vtk(const TriMesh& mesh, const std::string& path, const ScalarFieldP1* phi,
               const VectorFieldP2* u, const ScalarPressureP1* p) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    const int nv = mesh.vertex_count();
    const int nt = mesh.triangle_count();

    out << "# vtk DataFile Version 3.0\n";
    out << "stokesopt fields\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nv << " double\n";
    for (const Vec2& v : mesh.vertices())
        out << format_double(v.x) << ' ' << format_double(v.y) << " 0\n";
    out << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const auto& tri : mesh.triangles())
        out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    out << "CELL_TYPES " << nt << '\n';
    for (int t = 0; t < nt; ++t) out << "5\n";

    if (phi || u || p) {
        out << "POINT_DATA " << nv << '\n';
        if (phi) {
            out << "SCALARS phi double 1\nLOOKUP_TABLE default\n";
            for (int v = 0; v < nv; ++v) out << format_double((*phi)[v]) << '\n';
        }
        if (p) {
            out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
            for (int v = 0; v < nv; ++v) out << format_double((*p)[v]) << '\n';
        }
        if (u) {
            out << "VECTORS velocity double\n";
            for (int v = 0; v < nv; ++v)
                out << format_double(u->x(v)) << ' ' << format_double(u->y(v)) << " 0\n";
        }
    }
    if (!out) throw IoError("failed while writing '" + path + "'");
}

std::string history_csv_header() {
    return "outer,inner,stage,L,J_dissipation,J_penal,J_eps_scaled,lambda,J_v,phi_min,phi_max";
}

std::string history_csv_row(const EnergyBreakdown& b) {
    std::string row;
    row += std::to_string(b.outer);
    row += ',';
    row += std::to_string(b.inner);
    row += ',';
    row += to_string(b.stage);
    for (double v : {b.total, b.dissipation, b.penalization, b.interface_scaled, b.lambda,
                     b.volume, b.phi_min, b.phi_max}) {
        row += ',';
        row += format_double(v);
    }
    return row;
}

void write_history_csv(const std::vector<EnergyBreakdown>& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << history_csv_header() << '\n';
    for (const EnergyBreakdown& b : history) out << history_csv_row(b) << '\n';
    if (!out) throw IoError("failed while writing '" + path + "'");
}

HistoryCsvWriter::HistoryCsvWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
    out_ << history_csv_header() << '\n';
}

void HistoryCsvWriter::append(const EnergyBreakdown& b) {
    out_ << history_csv_row(b) << '\n';
    out_.flush();
    if (!out_) throw IoError("failed while writing '" + path_ + "'");
}

}  // namespace stokesopt
