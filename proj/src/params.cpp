#include "riscov/params.hpp"

namespace riscov {

namespace {
void fail(const std::string& field, const std::string& why) {
    throw std::invalid_argument("ScenarioParams." + field + ": " + why);
}
} // namespace

void ScenarioParams::validate() const {
    if (!(lambda_b >= 0.0) || !std::isfinite(lambda_b)) fail("lambda_b", "must be finite and >= 0");
    if (!(lambda_r >= 0.0) || !std::isfinite(lambda_r)) fail("lambda_r", "must be finite and >= 0");
    if (!(lambda_l >= 0.0) || !std::isfinite(lambda_l)) fail("lambda_l", "must be finite and >= 0");
    if (!(lambda_u >= 0.0) || !std::isfinite(lambda_u)) fail("lambda_u", "must be finite and >= 0");
    if (!(mean_blockage_len >= 0.0)) fail("mean_blockage_len", "must be >= 0");
    if (m_t < 1) fail("m_t", "must be >= 1");
    if (m_r < 1) fail("m_r", "must be >= 1");
    if (n_r < 1) fail("n_r", "must be >= 1");
    if (!(m_t_side > 0.0) || m_t_side > m_t) fail("m_t_side", "must be in (0, m_t]");
    if (!(n_r_side > 0.0) || n_r_side > n_r) fail("n_r_side", "must be in (0, n_r]");
    if (!(c0 > 0.0)) fail("c0", "must be > 0");
    if (!(alpha > 2.0)) fail("alpha", "must be > 2 for finite interference");
    if (!(rho_d > 0.0)) fail("rho_d", "must be > 0");
    if (!(rho_v > 0.0)) fail("rho_v", "must be > 0");
    if (!(rho_ds > 0.0)) fail("rho_ds", "must be > 0");
    if (!(p_s > 0.0)) fail("p_s", "must be > 0");
    if (!(sigma_c2 >= 0.0)) fail("sigma_c2", "must be >= 0");
    if (!(sigma_s2 >= 0.0)) fail("sigma_s2", "must be >= 0");
    if (!(bandwidth > 0.0)) fail("bandwidth", "must be > 0");
    if (!(window_radius > 0.0)) fail("window_radius", "must be > 0");
}

} // namespace riscov
