#include "sff/ensembles.hpp"

#include <algorithm>
#include <cmath>

#include "sff/linalg.hpp"

namespace sff {

namespace {

// Left-multiplies U by a gate embedded on the given qubits (bit positions,
// block bit j <-> qubits[j]; LSB = qubit 0).
void apply_gate_left(Matrix& u, const Matrix& gate, const std::vector<int>& qubits) {
    const int nq = static_cast<int>(qubits.size());
    const int block = 1 << nq;
    const Eigen::Index dim = u.rows();
    std::uint64_t target_mask = 0;
    for (int q : qubits) target_mask |= (1ull << q);
    std::vector<Eigen::Index> idx(block);
    std::vector<Complex> vec(block);
    for (Eigen::Index col = 0; col < u.cols(); ++col) {
        for (Eigen::Index base = 0; base < dim; ++base) {
            if (static_cast<std::uint64_t>(base) & target_mask) continue;
            for (int a = 0; a < block; ++a) {
                Eigen::Index r = base;
                for (int j = 0; j < nq; ++j)
                    if (a & (1 << j)) r |= (Eigen::Index{1} << qubits[j]);
                idx[a] = r;
                vec[a] = u(r, col);
            }
            for (int a = 0; a < block; ++a) {
                Complex acc = 0;
                for (int b = 0; b < block; ++b) acc += gate(a, b) * vec[b];
                u(idx[a], col) = acc;
            }
        }
    }
}

Matrix block_diagonal_pairs(const std::vector<Eigen::Matrix2cd>& blocks) {
    const int d = 2 * static_cast<int>(blocks.size());
    Matrix m = Matrix::Zero(d, d);
    for (int j = 0; j < d / 2; ++j) m.block<2, 2>(2 * j, 2 * j) = blocks[j];
    return m;
}

}  // namespace

CbeCoefficients sample_cbe_coefficients(int d, double beta, RandomStream& stream) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("cbe: d must be even and >= 2");
    if (!(beta > 0.0)) throw std::invalid_argument("cbe: beta must be positive");
    CbeCoefficients c;
    c.alphas.resize(d - 1);
    for (int n = 0; n < d - 1; ++n) {
        double s = beta * (d - 1 - n) / 2.0;
        c.alphas[n] = sample_alpha(stream, s);
    }
    c.last_phase = stream.uniform_phase();
    return c;
}

std::vector<Eigen::Matrix2cd> cbe_scattering_blocks(const CbeCoefficients& coeffs) {
    const int d = coeffs.dim();
    std::vector<Eigen::Matrix2cd> blocks(d);
    for (int n = 0; n < d - 1; ++n) {
        Complex a = coeffs.alphas[n];
        double sin_theta = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
        blocks[n] << std::conj(a), sin_theta, sin_theta, -a;
    }
    blocks[d - 1] << std::polar(1.0, coeffs.last_phase), 0.0, 0.0, 1.0;
    return blocks;
}

Matrix build_cbe_unitary(const CbeParams& params, RandomStream& stream) {
    return build_cbe_from_coefficients(sample_cbe_coefficients(params.d, params.beta, stream));
}

// U = S L S^dag M. All four factors have at most two nonzeros per column, so
// the product is filled directly: column `col` of U receives contributions
// from M's block pair, routed through the shifted L blocks.
Matrix build_cbe_from_coefficients(const CbeCoefficients& coeffs) {
    const int d = coeffs.dim();
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("cbe: d must be even and >= 2");
    auto blk = cbe_scattering_blocks(coeffs);
    Matrix u = Matrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        const int m = col / 2;
        const int c = col - 2 * m;
        for (int k = 2 * m; k <= 2 * m + 1; ++k) {
            Complex m_entry = blk[2 * m](k - 2 * m, c);
            if (m_entry == Complex(0.0)) continue;
            const int kl = (k - 1 + d) % d;
            const int b = kl / 2;
            const int lc = kl - 2 * b;
            const int r0 = (2 * b + 1) % d;
            const int r1 = (2 * b + 2) % d;
            u(r0, col) += blk[2 * b + 1](0, lc) * m_entry;
            u(r1, col) += blk[2 * b + 1](1, lc) * m_entry;
        }
    }
    return u;
}

Matrix build_walk_multiplexer_unitary(const CbeCoefficients& coeffs, int n_qubits) {
    const int d = coeffs.dim();
    const int dim = 1 << n_qubits;
    if (dim < d) throw std::invalid_argument("multiplexer: 2^N must be >= d");
    auto blk = cbe_scattering_blocks(coeffs);
    auto padded = [&](int idx) -> Eigen::Matrix2cd {
        if (idx < d) return blk[idx];
        return Eigen::Matrix2cd::Identity();
    };
    std::vector<Eigen::Matrix2cd> m_blocks(dim / 2), l_blocks(dim / 2);
    for (int p = 0; p < dim / 2; ++p) {
        m_blocks[p] = padded(2 * p);
        l_blocks[p] = padded(2 * p + 1);
    }
    Matrix shift = Matrix::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) shift((m + 1) % dim, m) = 1.0;
    Matrix lmat = block_diagonal_pairs(l_blocks);
    Matrix mmat = block_diagonal_pairs(m_blocks);
    return shift * lmat * shift.adjoint() * mmat;
}

Matrix build_brickwork_full(const CbeCoefficients& coeffs) {
    const int d = coeffs.dim();
    const int l = d / 2;
    if (l > 5) throw std::invalid_argument("brickwork: l must be <= 5");
    auto blk = cbe_scattering_blocks(coeffs);
    const Eigen::Index dim = Eigen::Index{1} << (2 * l);
    Matrix u = Matrix::Identity(dim, dim);
    auto two_qubit_gate = [&](int k) {
        // Number-conserving gate: trivial on |00> and |11>, the single-qubit
        // block on the one-particle pair (block bit 0 = first qubit).
        Matrix g = Matrix::Identity(4, 4);
        g(1, 1) = blk[k](0, 0);
        g(1, 2) = blk[k](0, 1);
        g(2, 1) = blk[k](1, 0);
        g(2, 2) = blk[k](1, 1);
        return g;
    };
    for (int k = 0; k < l; ++k)
        apply_gate_left(u, two_qubit_gate(2 * k), {2 * k, 2 * k + 1});
    for (int k = 0; k < l; ++k)
        apply_gate_left(u, two_qubit_gate(2 * k + 1), {2 * k + 1, (2 * k + 2) % (2 * l)});
    return u;
}

Matrix build_brickwork_one_particle(const CbeCoefficients& coeffs) {
    const int d = coeffs.dim();
    Matrix full = build_brickwork_full(coeffs);
    Matrix u(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) u(i, j) = full(Eigen::Index{1} << i, Eigen::Index{1} << j);
    return u;
}

Matrix permutation_unitary(const Permutation& pi, const std::vector<double>& phases) {
    const int d = pi.size();
    if (static_cast<int>(phases.size()) != d)
        throw std::invalid_argument("permutation_unitary: phases size mismatch");
    Matrix s = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) s(pi.map[k], k) = std::polar(1.0, phases[k]);
    return s;
}

Matrix build_perturbed_permutation(const PermCircuitParams& params, const Matrix& gue_h) {
    const int d = params.pi.size();
    if (params.g < 0) throw std::invalid_argument("perturbed permutation: g must be >= 0");
    if (gue_h.rows() != d || gue_h.cols() != d)
        throw std::invalid_argument("perturbed permutation: H dimension does not match permutation");
    Matrix s = permutation_unitary(params.pi, params.phases);
    if (params.g == 0.0) return s;
    Matrix e = hermitian_phase_exponential(gue_h, params.g);
    // S is a phased column permutation, so E*S is a column gather.
    Matrix u(d, d);
    for (int k = 0; k < d; ++k) {
        // column k of S has its entry at row pi(k)
        u.col(k) = e.col(params.pi.map[k]) * std::polar(1.0, params.phases[k]);
    }
    return u;
}

Matrix build_lax_unitary(const LaxParams& params) {
    const int d = params.d;
    if (d < 1) throw std::invalid_argument("lax: d must be >= 1");
    if (!(params.g > 0.0 && params.g < 1.0))
        throw NumericalError("lax: g must lie strictly in (0, 1); the g -> 0 and g -> 1 limits "
                             "have separate constructors");
    if (static_cast<int>(params.momenta.size()) != d)
        throw std::invalid_argument("lax: momenta size mismatch");
    const Complex numerator = 1.0 - std::polar(1.0, 2.0 * kPi * params.g);
    std::vector<Complex> inv_den(d);
    for (int r = 0; r < d; ++r) {
        Complex den = 1.0 - std::polar(1.0, 2.0 * kPi * (r + params.g) / d);
        inv_den[r] = numerator / den;
    }
    Matrix u(d, d);
    for (int m = 0; m < d; ++m) {
        Complex row_phase = std::polar(1.0 / d, params.momenta[m]);
        for (int n = 0; n < d; ++n) u(m, n) = row_phase * inv_den[(m - n + d) % d];
    }
    return u;
}

Matrix build_lax_shift_limit(const std::vector<double>& momenta) {
    const int d = static_cast<int>(momenta.size());
    Matrix u = Matrix::Zero(d, d);
    for (int m = 0; m < d; ++m) u(m, (m + 1) % d) = std::polar(1.0, momenta[m]);
    return u;
}

Matrix build_lax_diagonal_limit(const std::vector<double>& momenta) {
    const int d = static_cast<int>(momenta.size());
    Matrix u = Matrix::Zero(d, d);
    for (int m = 0; m < d; ++m) u(m, m) = std::polar(1.0, momenta[m]);
    return u;
}

std::vector<int> staircase_factor_positions(int num_qubits, int block_qubits) {
    if (block_qubits < 2 || block_qubits > num_qubits)
        throw std::invalid_argument("staircase: need 2 <= n <= L");
    std::vector<int> positions;
    const int per_layer = num_qubits / block_qubits;
    // Layer k = n-1 is the rightmost factor group, so it acts first.
    for (int k = block_qubits - 1; k >= 0; --k)
        for (int m = 0; m < per_layer; ++m) positions.push_back(block_qubits * m + k);
    return positions;
}

LocalStaircaseParams sample_staircase_params(int num_qubits, int block_qubits, double g,
                                             RandomStream& stream) {
    LocalStaircaseParams p;
    p.num_qubits = num_qubits;
    p.block_qubits = block_qubits;
    p.g = g;
    const int block_dim = 1 << block_qubits;
    const size_t factors = staircase_factor_positions(num_qubits, block_qubits).size();
    for (size_t f = 0; f < factors; ++f) {
        p.block_perms.push_back(sample_permutation(stream, block_dim));
        std::vector<double> phases(block_dim);
        for (auto& ph : phases) ph = stream.uniform_phase();
        p.block_phases.push_back(std::move(phases));
    }
    return p;
}

Permutation staircase_global_permutation(const LocalStaircaseParams& params) {
    const int L = params.num_qubits;
    const int n = params.block_qubits;
    const int d = 1 << L;
    auto positions = staircase_factor_positions(L, n);
    std::vector<int> map(d);
    for (int x = 0; x < d; ++x) {
        int y = x;
        for (size_t f = 0; f < positions.size(); ++f) {
            int q = positions[f];
            int b = 0;
            for (int j = 0; j < n; ++j)
                if (y & (1 << ((q + j) % L))) b |= (1 << j);
            int bp = params.block_perms[f].map[b];
            for (int j = 0; j < n; ++j) {
                int bit = 1 << ((q + j) % L);
                if (bp & (1 << j))
                    y |= bit;
                else
                    y &= ~bit;
            }
        }
        map[x] = y;
    }
    return Permutation::from_map(std::move(map));
}

LocalStaircaseParams search_staircase_cycles(int num_qubits, int block_qubits, double g,
                                             const std::vector<int>& target_cycles,
                                             RandomStream& stream, int max_attempts) {
    std::vector<int> target = target_cycles;
    std::sort(target.begin(), target.end(), std::greater<int>());
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        LocalStaircaseParams p = sample_staircase_params(num_qubits, block_qubits, g, stream);
        if (staircase_global_permutation(p).cycle_lengths() == target) return p;
    }
    throw NumericalError("staircase cycle search: target cycle type not found within attempt budget");
}

Matrix build_local_staircase(const LocalStaircaseParams& params, RandomStream& stream) {
    const int L = params.num_qubits;
    const int n = params.block_qubits;
    const int block_dim = 1 << n;
    const Eigen::Index dim = Eigen::Index{1} << L;
    auto positions = staircase_factor_positions(L, n);
    if (params.block_perms.size() != positions.size())
        throw std::invalid_argument("staircase: params do not match factor count");
    Matrix u = Matrix::Identity(dim, dim);
    for (size_t f = 0; f < positions.size(); ++f) {
        Matrix s = permutation_unitary(params.block_perms[f], params.block_phases[f]);
        Matrix gate;
        if (params.g == 0.0) {
            gate = std::move(s);
        } else {
            Matrix h = sample_gue(stream, block_dim);
            gate = hermitian_phase_exponential(h, params.g) * s;
        }
        std::vector<int> qubits(n);
        for (int j = 0; j < n; ++j) qubits[j] = (positions[f] + j) % L;
        apply_gate_left(u, gate, qubits);
    }
    return u;
}

}  // namespace sff
