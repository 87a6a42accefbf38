#include <dispmap/csv.hpp>

#include <cstdio>

namespace dispmap {

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void write_trajectory_csv(std::ostream& out, const ResonatorTrajectory& traj) {
  CsvWriter w(out);
  w.header({"t_ns", "re_eta", "im_eta", "photon_number"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    w.row({traj.times[i], traj.eta[i].real(), traj.eta[i].imag(), traj.photon(i)});
  }
}

void write_operator_csv(std::ostream& out, const ExtendedOperator& op) {
  CsvWriter w(out);
  w.header({"row", "col", "re", "im"});
  for (Eigen::Index r = 0; r < op.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.data.cols(); ++c) {
      const Complex v = op.data(r, c);
      if (v != 0.0) w.row({static_cast<double>(r), static_cast<double>(c), v.real(), v.imag()});
    }
  }
}

}  // namespace dispmap
