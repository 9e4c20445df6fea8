#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "probrob/cat.hpp"
#include "probrob/errors.hpp"

namespace probrob {

struct DenseLayer {
    Eigen::MatrixXd weights;
    Eigen::VectorXd bias;
};
struct ReluLayer {};
struct MaxPoolLayer {
    int window = 1;
};
using Layer = std::variant<DenseLayer, ReluLayer, MaxPoolLayer>;

// Dense/ReLU/maxpool feed-forward network description. Layer dimensions
// chain; maxpool windows divide their input dimension.
struct NetworkSpec {
    int input_dim = 0;
    std::vector<Layer> layers;

    int output_dim() const {
        int d = input_dim;
        for (const auto& layer : layers) {
            if (const auto* dense = std::get_if<DenseLayer>(&layer)) {
                d = static_cast<int>(dense->weights.rows());
            } else if (const auto* pool = std::get_if<MaxPoolLayer>(&layer)) {
                d /= pool->window;
            }
        }
        return d;
    }
};

namespace detail {

// Whitespace tokenizer that remembers line numbers and skips '#' comments.
class TokenStream {
  public:
    explicit TokenStream(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) {
                line = line.substr(0, hash);
            }
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                tokens_.push_back(tok);
                lines_.push_back(line_no);
            }
        }
    }

    bool done() const { return pos_ >= tokens_.size(); }
    int line() const { return pos_ < lines_.size() ? lines_[pos_] : (lines_.empty() ? 0 : lines_.back()); }

    std::string next(const char* what) {
        if (done()) {
            throw ParseError(std::string("unexpected end of file, expected ") + what);
        }
        return tokens_[pos_++];
    }

    long next_int(const char* what) {
        std::string tok = next(what);
        char* end = nullptr;
        long v = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0') {
            std::ostringstream oss;
            oss << "line " << line() << ": expected integer " << what << ", got '" << tok << "'";
            throw ParseError(oss.str());
        }
        return v;
    }

    double next_real(const char* what) {
        std::string tok = next(what);
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
            std::ostringstream oss;
            oss << "line " << line() << ": expected number " << what << ", got '" << tok << "'";
            throw ParseError(oss.str());
        }
        return v;
    }

  private:
    std::vector<std::string> tokens_;
    std::vector<int> lines_;
    std::size_t pos_ = 0;
};

} // namespace detail

// Parse the text network format:
//   input_dim: <int>
//   dense <rows> <cols>   followed by rows*cols weights (row-major) and rows biases
//   relu
//   maxpool <window>
// '#' starts a comment; whitespace is free-form.
inline NetworkSpec parse_network(const std::string& content) {
    detail::TokenStream ts(content);
    std::string head = ts.next("'input_dim:' header");
    if (head != "input_dim:" && head != "input_dim") {
        throw ParseError("network file must start with 'input_dim: <int>'");
    }
    NetworkSpec spec;
    long in_dim = ts.next_int("input dimension");
    if (in_dim <= 0) {
        throw ValidationError("input_dim must be positive");
    }
    spec.input_dim = static_cast<int>(in_dim);

    int cur = spec.input_dim;
    int layer_index = 0;
    while (!ts.done()) {
        std::string kind = ts.next("layer kind");
        if (kind == "dense") {
            long rows = ts.next_int("dense rows");
            long cols = ts.next_int("dense cols");
            if (rows <= 0 || cols <= 0) {
                std::ostringstream oss;
                oss << "layer " << layer_index << ": dense dims must be positive";
                throw ValidationError(oss.str());
            }
            Eigen::MatrixXd W(rows, cols);
            for (long r = 0; r < rows; ++r) {
                for (long c = 0; c < cols; ++c) {
                    W(r, c) = ts.next_real("weight");
                }
            }
            Eigen::VectorXd b(rows);
            for (long r = 0; r < rows; ++r) {
                b[r] = ts.next_real("bias");
            }
            if (cols != cur) {
                std::ostringstream oss;
                oss << "layer " << layer_index << ": dense expects input dim " << cols
                    << " but previous layer produces " << cur;
                throw ValidationError(oss.str());
            }
            cur = static_cast<int>(rows);
            spec.layers.push_back(DenseLayer{std::move(W), std::move(b)});
        } else if (kind == "relu") {
            spec.layers.push_back(ReluLayer{});
        } else if (kind == "maxpool") {
            long window = ts.next_int("maxpool window");
            if (window <= 0) {
                std::ostringstream oss;
                oss << "layer " << layer_index << ": maxpool window must be positive";
                throw ValidationError(oss.str());
            }
            if (cur % window != 0) {
                std::ostringstream oss;
                oss << "layer " << layer_index << ": maxpool window " << window
                    << " does not divide input dim " << cur;
                throw ValidationError(oss.str());
            }
            cur /= static_cast<int>(window);
            spec.layers.push_back(MaxPoolLayer{static_cast<int>(window)});
        } else {
            std::ostringstream oss;
            oss << "line " << ts.line() << ": unknown layer kind '" << kind << "'";
            throw ParseError(oss.str());
        }
        ++layer_index;
    }
    return spec;
}

inline NetworkSpec load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open network file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

namespace detail {

// ReLU over d coordinates: a chain of d binary case nodes. Coordinate i
// splits on x_i >= 0 (identity) vs x_i < 0 (zero that coordinate).
inline CatFunc relu_to_cat(int dim) {
    CatFunc acc = CatFunc::identity(dim);
    bool first = true;
    for (int i = 0; i < dim; ++i) {
        Eigen::MatrixXd zeroed = Eigen::MatrixXd::Identity(dim, dim);
        zeroed(i, i) = 0.0;
        std::vector<std::pair<Guard, CatFunc>> branches;
        branches.push_back({Guard{{GuardAtom::ge_zero(i)}}, CatFunc::identity(dim)});
        branches.push_back({Guard{{GuardAtom::lt_zero(i)}},
                            CatFunc::affine(std::move(zeroed), Eigen::VectorXd::Zero(dim))});
        CatFunc node = CatFunc::cases(std::move(branches));
        acc = first ? node : CatFunc::compose(node, acc);
        first = false;
    }
    return acc;
}

// Maxpool with window w over dim = g*w coordinates: a chain of g case
// nodes, each collapsing one window. After r collapsed windows the layout is
// [max_0 .. max_{r-1}, raw coords of windows r..g-1]; node r selects the
// argmax of window r with ties broken toward the lowest index (x_j wins via
// x_j >= x_k for k > j and the strict complement x_j > x_k for k < j).
inline CatFunc maxpool_to_cat(int dim, int window) {
    const int groups = dim / window;
    CatFunc acc = CatFunc::identity(dim);
    bool first = true;
    for (int r = 0; r < groups; ++r) {
        const int in_dim = r + (groups - r) * window;
        const int out_dim = in_dim - window + 1;
        std::vector<std::pair<Guard, CatFunc>> branches;
        for (int j = 0; j < window; ++j) {
            Guard guard;
            for (int k = 0; k < window; ++k) {
                if (k == j) {
                    continue;
                }
                guard.atoms.push_back(GuardAtom::ge_coord(r + j, r + k, /*strict_cmp=*/k < j));
            }
            Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(out_dim, in_dim);
            for (int i = 0; i < r; ++i) {
                sel(i, i) = 1.0;
            }
            sel(r, r + j) = 1.0;
            for (int i = 0; i < (groups - r - 1) * window; ++i) {
                sel(r + 1 + i, r + window + i) = 1.0;
            }
            branches.push_back(
                {std::move(guard), CatFunc::affine(std::move(sel), Eigen::VectorXd::Zero(out_dim))});
        }
        CatFunc node = CatFunc::cases(std::move(branches));
        acc = first ? node : CatFunc::compose(node, acc);
        first = false;
    }
    return acc;
}

} // namespace detail

// Translate a network into a single CAT function with identical semantics.
inline CatFunc to_cat(const NetworkSpec& spec) {
    if (spec.input_dim <= 0) {
        throw ValidationError("to_cat: input_dim must be positive");
    }
    CatFunc acc = CatFunc::identity(spec.input_dim);
    int cur = spec.input_dim;
    bool first = true;
    for (const auto& layer : spec.layers) {
        CatFunc translated = CatFunc::identity(cur);
        if (const auto* dense = std::get_if<DenseLayer>(&layer)) {
            if (dense->weights.cols() != cur) {
                throw ValidationError("to_cat: dense layer dimension mismatch");
            }
            translated = CatFunc::affine(dense->weights, dense->bias);
            cur = static_cast<int>(dense->weights.rows());
        } else if (std::get_if<ReluLayer>(&layer)) {
            translated = detail::relu_to_cat(cur);
        } else if (const auto* pool = std::get_if<MaxPoolLayer>(&layer)) {
            if (cur % pool->window != 0) {
                throw ValidationError("to_cat: maxpool window does not divide dim");
            }
            translated = detail::maxpool_to_cat(cur, pool->window);
            cur /= pool->window;
        }
        acc = first ? translated : CatFunc::compose(translated, acc);
        first = false;
    }
    return acc;
}

} // namespace probrob
