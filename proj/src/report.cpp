#include "lkb/report.hpp"

#include <algorithm>
#include <sstream>

namespace lkb {

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{{"check", r.check}, {"n", r.n}, {"passed", r.passed}};
  j["witness"] = r.witness ? *r.witness : nlohmann::json(nullptr);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

namespace {

template <class M, class F>
std::string render_grid(const M& m, F&& cell) {
  std::vector<std::vector<std::string>> text(m.rows(), std::vector<std::string>(m.cols()));
  std::vector<std::size_t> width(m.cols(), 1);
  const bool labelled = !m.row_labels().empty();
  std::size_t label_width = 0;
  if (labelled)
    for (const auto& l : m.row_labels()) label_width = std::max(label_width, l.size());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!m.col_labels().empty()) width[j] = m.col_labels()[j].size();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      text[i][j] = cell(m(i, j));
      width[j] = std::max(width[j], text[i][j].size());
    }
  }
  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t w) { out << s << std::string(w - s.size(), ' '); };
  if (!m.col_labels().empty()) {
    if (labelled) pad("", label_width + 2);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      pad(m.col_labels()[j], width[j]);
      out << (j + 1 < m.cols() ? "  " : "");
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (labelled) pad(m.row_labels()[i], label_width + 2);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j + 1 < m.cols()) {
        pad(text[i][j], width[j]);
        out << "  ";
      } else {
        out << text[i][j];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string render_text(const RingMatrix& m) {
  return render_grid(m, [](const Poly& p) { return p.to_string(); });
}

std::string render_text(const IntMatrix& m) {
  return render_grid(m, [](const Integer& v) { return v.get_str(); });
}

}  // namespace lkb
