#include <cmath>
#include <sstream>

#include "mlomax/lomax.hpp"

namespace mlomax {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    if (!(in >> value) || !(in >> std::ws).eof()) {
        throw std::invalid_argument("parse_record: bad value for '" + key + "': '" + text + "'");
    }
    return value;
}

} // namespace

double folded_unit_lomax_density(const Vector& x) {
    const int d = static_cast<int>(x.size());
    if (d < 1) throw std::invalid_argument("folded_unit_lomax_density: empty point");
    return std::exp(std::lgamma(d + 1.0) - d * std::log(2.0) -
                    (d + 1.0) * std::log1p(x.cwiseAbs().sum()));
}

double laplace_mixture_density(int dim, const Vector& x, const MixtureQuadrature& quadrature) {
    if (dim < 1) throw std::invalid_argument("laplace_mixture_density: dim must be positive");
    if (x.size() != dim) throw std::invalid_argument("laplace_mixture_density: point has wrong dimension");
    const Vector abs_x = x.cwiseAbs();
    auto integrand = [&](double s) {
        double log_value = -s; // exponential mixing density
        for (int j = 0; j < dim; ++j) log_value += std::log(0.5 * s) - s * abs_x[j];
        return s > 0.0 ? std::exp(log_value) : 0.0;
    };
    const double upper = quadrature.truncation / (1.0 + abs_x.sum());
    const double value = composite_gauss_legendre(integrand, 0.0, upper, quadrature.panels,
                                                  gauss_legendre(quadrature.order));
    const double closed = folded_unit_lomax_density(x);
    const double residual = std::abs(value - closed) / closed;
    if (!(residual <= quadrature.tolerance)) {
        std::ostringstream msg;
        msg << "laplace_mixture_density: relative residual " << residual << " exceeds tolerance "
            << quadrature.tolerance;
        throw QuadratureError(msg.str());
    }
    return value;
}

std::string to_record(const LomaxSpecd& spec) {
    std::ostringstream out;
    out.precision(17);
    out << "dim=" << spec.dim << "\nshape=" << spec.shape << "\nscale=" << spec.scale << "\nfolded=";
    for (std::size_t i = 0; i < spec.folded.size(); ++i) {
        out << (i ? "," : "") << spec.folded[i] + 1;
    }
    out << "\n";
    return out.str();
}

LomaxSpecd parse_record(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<int> dim;
    std::optional<double> shape;
    std::optional<double> scale;
    std::vector<int> folded;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("parse_record: expected key=value, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "dim") {
            dim = parse_number<int>(key, value);
        } else if (key == "shape") {
            shape = parse_number<double>(key, value);
        } else if (key == "scale") {
            scale = parse_number<double>(key, value);
        } else if (key == "folded") {
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ',')) {
                if (!item.empty()) folded.push_back(parse_number<int>(key, item) - 1);
            }
        } else {
            throw std::invalid_argument("parse_record: unknown key '" + key + "'");
        }
    }
    if (!dim || !shape || !scale) throw std::invalid_argument("parse_record: missing dim, shape or scale");
    return LomaxSpecd(*dim, *shape, *scale, folded);
}

} // namespace mlomax
