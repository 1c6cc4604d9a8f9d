#include "slag/grid_function.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "slag/errors.hpp"
#include "slag/num_format.hpp"

namespace slag {

GridFunction::GridFunction(Box box, std::vector<std::size_t> counts, std::vector<double> values)
    : box_(std::move(box)), counts_(std::move(counts)), values_(std::move(values)) {
    init(true);
}

GridFunction::GridFunction(SamplingTag, Box box, std::vector<std::size_t> counts)
    : box_(std::move(box)), counts_(std::move(counts)) {
    init(false);
}

GridFunction GridFunction::sample(Box box, std::vector<std::size_t> counts,
                                  AnalyticEvaluators analytic) {
    if (!analytic.value) throw InvalidInput("GridFunction::sample: missing value evaluator");
    GridFunction f(SamplingTag{}, std::move(box), std::move(counts));
    f.analytic_ = std::move(analytic);
    std::size_t total = 1;
    for (std::size_t c : f.counts()) total *= c;
    f.values_.resize(total);
    for (std::size_t i = 0; i < f.values_.size(); ++i) f.values_[i] = f.analytic_.value(f.node_point(i));
    return f;
}

std::size_t GridFunction::interior_count() const {
    std::size_t n = 1;
    for (std::size_t c : counts_) n *= c - 2;
    return n;
}

void GridFunction::init(bool expect_values) {
    const std::size_t d = box_.size();
    if (d == 0) throw InvalidInput("GridFunction: empty box");
    if (counts_.size() != d) throw InvalidInput("GridFunction: counts/box mismatch");
    h_.resize(d);
    coords_.resize(d);
    std::size_t total = 1;
    for (std::size_t a = 0; a < d; ++a) {
        if (counts_[a] < 5) throw InvalidInput("GridFunction: need at least 5 nodes per axis");
        if (!(box_[a].hi > box_[a].lo)) throw InvalidInput("GridFunction: degenerate box");
        h_[a] = (box_[a].hi - box_[a].lo) / static_cast<double>(counts_[a] - 1);
        coords_[a].resize(counts_[a]);
        for (std::size_t i = 0; i < counts_[a]; ++i)
            coords_[a][i] = box_[a].lo + static_cast<double>(i) * h_[a];
        total *= counts_[a];
    }
    strides_.assign(d, 1);
    for (std::size_t a = d - 1; a-- > 0;) strides_[a] = strides_[a + 1] * counts_[a + 1];

    if (expect_values && values_.size() != total)
        throw InvalidInput("GridFunction: value count does not match grid");

    if (!values_.empty() && analytic_.value) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double ref = analytic_.value(node_point(i));
            const double scale = std::max(1.0, std::abs(ref));
            if (std::abs(values_[i] - ref) > 1e-12 * scale)
                throw InvalidInput("GridFunction: samples disagree with analytic values");
        }
    }
}

double GridFunction::spacing_min() const {
    double m = h_[0];
    for (double v : h_) m = std::min(m, v);
    return m;
}

std::size_t GridFunction::flat_index(const std::vector<std::size_t>& multi) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < counts_.size(); ++a) f += multi[a] * strides_[a];
    return f;
}

std::vector<std::size_t> GridFunction::multi_index(std::size_t flat) const {
    std::vector<std::size_t> m(counts_.size());
    for (std::size_t a = 0; a < counts_.size(); ++a) {
        m[a] = flat / strides_[a];
        flat %= strides_[a];
    }
    return m;
}

Point GridFunction::node_point(std::size_t flat) const {
    const auto m = multi_index(flat);
    Point x(counts_.size());
    for (std::size_t a = 0; a < counts_.size(); ++a) x[a] = coords_[a][m[a]];
    return x;
}

bool GridFunction::is_interior(const std::vector<std::size_t>& multi) const {
    for (std::size_t a = 0; a < counts_.size(); ++a)
        if (multi[a] == 0 || multi[a] + 1 >= counts_[a]) return false;
    return true;
}

void write_grid_text(std::ostream& os, const GridFunction& f) {
    os << f.dim();
    for (std::size_t a = 0; a < f.dim(); ++a) os << ' ' << fmt_g17(f.spacing()[a]);
    for (std::size_t a = 0; a < f.dim(); ++a) os << ' ' << f.counts()[a];
    for (std::size_t a = 0; a < f.dim(); ++a)
        os << ' ' << fmt_g17(f.box()[a].lo) << ' ' << fmt_g17(f.box()[a].hi);
    os << '\n';
    for (double v : f.values()) os << fmt_g17(v) << '\n';
}

GridFunction read_grid_text(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw IoError("grid: missing header line");
    std::istringstream hs(header);
    std::size_t dim = 0;
    if (!(hs >> dim) || dim == 0) throw IoError("grid: bad dimension in header");
    std::vector<double> h(dim);
    for (auto& v : h)
        if (!(hs >> v)) throw IoError("grid: bad spacing in header");
    std::vector<std::size_t> counts(dim);
    std::size_t total = 1;
    for (auto& c : counts) {
        if (!(hs >> c)) throw IoError("grid: bad counts in header");
        total *= c;
    }
    Box box(dim);
    for (auto& iv : box)
        if (!(hs >> iv.lo >> iv.hi)) throw IoError("grid: bad box in header");

    std::vector<double> values;
    values.reserve(total);
    std::string line;
    while (values.size() < total && std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double v;
        if (!(ls >> v)) throw IoError("grid: bad value line");
        values.push_back(v);
    }
    if (values.size() != total) throw IoError("grid: value count does not match header");

    GridFunction f(std::move(box), counts, std::move(values));
    for (std::size_t a = 0; a < dim; ++a) {
        const double scale = std::max(1.0, std::abs(f.spacing()[a]));
        if (std::abs(f.spacing()[a] - h[a]) > 1e-12 * scale)
            throw IoError("grid: header spacing inconsistent with box/counts");
    }
    return f;
}

void write_grid_file(const std::string& path, const GridFunction& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_grid_text(os, f);
    if (!os) throw IoError("write failed: " + path);
}

GridFunction read_grid_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return read_grid_text(is);
}

std::string grid_to_json(const GridFunction& f) {
    std::ostringstream os;
    os << "{\"dim\":" << f.dim() << ",\"h\":[";
    for (std::size_t a = 0; a < f.dim(); ++a) os << (a ? "," : "") << fmt_g17(f.spacing()[a]);
    os << "],\"counts\":[";
    for (std::size_t a = 0; a < f.dim(); ++a) os << (a ? "," : "") << f.counts()[a];
    os << "],\"box\":[";
    for (std::size_t a = 0; a < f.dim(); ++a)
        os << (a ? "," : "") << '[' << fmt_g17(f.box()[a].lo) << ',' << fmt_g17(f.box()[a].hi) << ']';
    os << "],\"values\":[";
    for (std::size_t i = 0; i < f.values().size(); ++i)
        os << (i ? "," : "") << fmt_g17(f.values()[i]);
    os << "]}";
    return os.str();
}

}  // namespace slag
