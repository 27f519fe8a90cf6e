#include <cremona/toric.hpp>

#include <algorithm>
#include <set>

namespace cremona {

namespace {

BigInt cross(const IntVec2 &u, const IntVec2 &v)
{
    return u[0] * v[1] - u[1] * v[0];
}

// 0 for angles in [0, pi), 1 for [pi, 2 pi).
int half(const IntVec2 &v)
{
    return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
}

BigInt int_from_json(const nlohmann::json &j)
{
    if (j.is_string()) {
        return BigInt(j.get<std::string>());
    }
    return BigInt(j.get<long>());
}

} // namespace

nlohmann::json json_int(const BigInt &n)
{
    if (n.fits_slong_p()) {
        return n.get_si();
    }
    return n.get_str();
}

IntVec2 primitive(const IntVec2 &v)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), v[0].get_mpz_t(), v[1].get_mpz_t());
    if (g == 0) {
        throw Error(ErrorKind::InvalidArgument, "zero vector has no primitive direction");
    }
    return {v[0] / g, v[1] / g};
}

bool angle_less(const IntVec2 &u, const IntVec2 &v)
{
    const int hu = half(u);
    const int hv = half(v);
    if (hu != hv) {
        return hu < hv;
    }
    return cross(u, v) > 0;
}

Fan2D Fan2D::from_rays(std::vector<IntVec2> rays)
{
    if (rays.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "a complete fan needs at least three rays");
    }
    for (const auto &r : rays) {
        if (!(primitive(r) == r)) {
            throw Error(ErrorKind::InvalidArgument, "ray (" + r[0].get_str() + "," + r[1].get_str() + ") is not primitive");
        }
    }
    std::sort(rays.begin(), rays.end(), angle_less);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const IntVec2 &u = rays[i];
        const IntVec2 &v = rays[(i + 1) % rays.size()];
        if (u == v) {
            throw Error(ErrorKind::InvalidArgument, "repeated ray in fan");
        }
        // every cone must be strictly convex: turn by less than pi
        if (cross(u, v) <= 0) {
            throw Error(ErrorKind::InvalidArgument, "fan is not complete (cone of angle >= pi)");
        }
    }
    Fan2D f;
    f.rays_ = std::move(rays);
    return f;
}

Fan2D Fan2D::standard_p2()
{
    Fan2D f;
    f.rays_ = {IntVec2{1, 0}, IntVec2{0, 1}, IntVec2{-1, -1}};
    return f;
}

std::optional<std::size_t> Fan2D::index_of(const IntVec2 &ray) const
{
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (rays_[i] == ray) {
            return i;
        }
    }
    return std::nullopt;
}

bool Fan2D::is_smooth() const
{
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (abs(cross(rays_[i], ray(i + 1))) != 1) {
            return false;
        }
    }
    return true;
}

Fan2D::Location Fan2D::locate(const IntVec2 &v) const
{
    const IntVec2 p = primitive(v);
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (rays_[i] == p) {
            return {true, i};
        }
        const IntVec2 &u = rays_[i];
        const IntVec2 &w = ray(i + 1);
        if (cross(u, p) > 0 && cross(p, w) > 0) {
            return {false, i};
        }
    }
    throw Error(ErrorKind::VerificationFailure, "vector outside every cone of a complete fan");
}

bool same_ray_set(const Fan2D &a, const Fan2D &b)
{
    return a.rays() == b.rays();
}

// ------------------------------------------------------------------ models

ToricSurfaceModel ToricSurfaceModel::p2()
{
    return {};
}

ToricSurfaceModel ToricSurfaceModel::blow_up_cone(std::size_t cone) const
{
    const std::size_t n = fan_.size();
    return blow_up(fan_.ray(cone % n), fan_.ray(cone % n + 1));
}

ToricSurfaceModel ToricSurfaceModel::blow_up(const IntVec2 &left, const IntVec2 &right) const
{
    const auto i = fan_.index_of(left);
    if (!i || !(fan_.ray(*i + 1) == right)) {
        throw Error(ErrorKind::NotAdjacent, "rays (" + left[0].get_str() + "," + left[1].get_str() + ") and (" + right[0].get_str() + "," +
                                                right[1].get_str() + ") do not span a cone of the fan");
    }
    ToricSurfaceModel m = *this;
    const IntVec2 w = primitive({left[0] + right[0], left[1] + right[1]});
    m.fan_.rays_.insert(m.fan_.rays_.begin() + static_cast<long>(*i + 1), w);
    // keep the angular normalization (first ray at the smallest angle)
    std::rotate(m.fan_.rays_.begin(), std::min_element(m.fan_.rays_.begin(), m.fan_.rays_.end(), angle_less), m.fan_.rays_.end());
    m.history_.push_back({left, right, w});
    return m;
}

ToricSurfaceModel ToricSurfaceModel::replay(const std::vector<BlowUpStep> &history)
{
    ToricSurfaceModel m;
    for (const auto &step : history) {
        m = m.blow_up(step.left, step.right);
        if (!(m.history_.back().ray == step.ray)) {
            throw Error(ErrorKind::InvalidArgument, "blow-up step records a ray different from the sum of its cone");
        }
    }
    return m;
}

// ----------------------------------------------------------- ray dynamics

RayImage ray_image(const IntMatrix2 &a, const IntVec2 &ray, const Fan2D &target)
{
    if (!a.is_unimodular()) {
        throw Error(ErrorKind::InvalidArgument, a.to_string() + " is not invertible over Z");
    }
    const IntVec2 img = primitive(a.apply(ray));
    const auto loc = target.locate(img);
    if (loc.on_ray) {
        return {RayImage::Kind::OntoRay, img, std::nullopt, std::nullopt};
    }
    return {RayImage::Kind::IntoConeInterior, img, target.ray(loc.index), target.ray(loc.index + 1)};
}

int E_of_monomial(const IntMatrix2 &a)
{
    const Fan2D p2 = Fan2D::standard_p2();
    int count = 0;
    for (const auto &r : p2.rays()) {
        count += ray_image(a, r, p2).contracted() ? 1 : 0;
    }
    return count;
}

ToricSurfaceModel minimal_model_containing(const std::vector<IntVec2> &required)
{
    ToricSurfaceModel m;
    std::vector<IntVec2> pending;
    for (const auto &v : required) {
        pending.push_back(primitive(v));
    }
    std::sort(pending.begin(), pending.end(), angle_less);
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    for (const auto &v : pending) {
        // Stern-Brocot descent: blow up the cone containing v until v appears.
        while (true) {
            const auto loc = m.fan().locate(v);
            if (loc.on_ray) {
                break;
            }
            m = m.blow_up_cone(loc.index);
        }
    }
    // Minimality: every inserted ray that could be blown down is required.
    std::set<IntVec2> needed(pending.begin(), pending.end());
    const Fan2D &fan = m.fan();
    for (std::size_t i = 0; i < fan.size(); ++i) {
        const IntVec2 &w = fan.ray(i);
        const IntVec2 &l = fan.ray(i + fan.size() - 1);
        const IntVec2 &r = fan.ray(i + 1);
        const bool contractible = w[0] == l[0] + r[0] && w[1] == l[1] + r[1];
        if (contractible && !Fan2D::standard_p2().index_of(w) && needed.count(w) == 0) {
            throw Error(ErrorKind::VerificationFailure, "toric refinement is not minimal");
        }
    }
    return m;
}

MonomialResolution resolve_monomial(const IntMatrix2 &a)
{
    if (!a.is_unimodular()) {
        throw Error(ErrorKind::InvalidArgument, a.to_string() + " does not have determinant +-1");
    }
    const IntMatrix2 inv = a.inverse();
    const Fan2D p2 = Fan2D::standard_p2();
    std::vector<IntVec2> pulled;
    for (const auto &r : p2.rays()) {
        pulled.push_back(inv.apply(r));
    }
    ToricSurfaceModel source = minimal_model_containing(pulled);
    std::vector<IntVec2> pushed;
    for (const auto &r : source.fan().rays()) {
        pushed.push_back(a.apply(r));
    }
    ToricSurfaceModel target = minimal_model_containing(pushed);
    // A must carry the source fan onto the target fan, cone by cone.
    const Fan2D &sf = source.fan();
    const Fan2D &tf = target.fan();
    if (sf.size() != tf.size() || !sf.is_smooth() || !tf.is_smooth()) {
        throw Error(ErrorKind::VerificationFailure, "resolution fans do not match");
    }
    const int orientation = a.det() > 0 ? 1 : -1;
    for (std::size_t i = 0; i < sf.size(); ++i) {
        const auto j = tf.index_of(a.apply(sf.ray(i)));
        const auto k = tf.index_of(a.apply(sf.ray(i + 1)));
        if (!j || !k) {
            throw Error(ErrorKind::VerificationFailure, "source ray not mapped onto a target ray");
        }
        const std::size_t n = tf.size();
        const bool adjacent = orientation > 0 ? (*k == (*j + 1) % n) : (*j == (*k + 1) % n);
        if (!adjacent) {
            throw Error(ErrorKind::VerificationFailure, "source cone not mapped onto a target cone");
        }
    }
    return {std::move(source), std::move(target)};
}

OrbitReport boundary_orbit(const IntMatrix2 &a, const IntVec2 &ray, const Fan2D &fan, std::size_t max_steps)
{
    if (!a.is_unimodular() || !is_loxodromic(a)) {
        throw Error(ErrorKind::NotLoxodromic, a.to_string() + " is not loxodromic");
    }
    OrbitReport report;
    report.start = primitive(ray);
    IntVec2 cur = report.start;
    for (std::size_t n = 0; n < max_steps; ++n) {
        const RayImage img = ray_image(a, cur, fan);
        if (img.image == cur && !report.fixed_at) {
            report.fixed_at = n;
        }
        report.rays.push_back(img.image);
        report.tags.push_back(img);
        cur = img.image;
    }
    return report;
}

// -------------------------------------------------------------------- JSON

nlohmann::json to_json(const IntVec2 &v)
{
    return nlohmann::json::array({json_int(v[0]), json_int(v[1])});
}

nlohmann::json to_json(const Fan2D &fan)
{
    nlohmann::json rays = nlohmann::json::array();
    for (const auto &r : fan.rays()) {
        rays.push_back(to_json(r));
    }
    return {{"rays", rays}, {"smooth", fan.is_smooth()}};
}

nlohmann::json to_json(const ToricSurfaceModel &model)
{
    nlohmann::json hist = nlohmann::json::array();
    ToricSurfaceModel m;
    for (const auto &step : model.history()) {
        m = m.blow_up(step.left, step.right);
        hist.push_back({{"index", *m.fan().index_of(step.ray)}, {"ray", to_json(step.ray)}, {"cone", {to_json(step.left), to_json(step.right)}}});
    }
    nlohmann::json j = to_json(model.fan());
    j["history"] = hist;
    return j;
}

nlohmann::json to_json(const RayImage &image)
{
    nlohmann::json j{{"image", to_json(image.image)}};
    if (image.contracted()) {
        j["tag"] = "IntoConeInterior";
        j["cone"] = {to_json(*image.left), to_json(*image.right)};
    } else {
        j["tag"] = "OntoRay";
    }
    return j;
}

nlohmann::json to_json(const OrbitReport &report)
{
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t i = 0; i < report.rays.size(); ++i) {
        nlohmann::json s = to_json(report.tags[i]);
        s["step"] = i + 1;
        steps.push_back(s);
    }
    nlohmann::json j{{"start", to_json(report.start)}, {"steps", steps}, {"fixed_ray", report.fixed_at.has_value()}};
    if (report.fixed_at) {
        j["fixed_at"] = *report.fixed_at;
    }
    return j;
}

ToricSurfaceModel model_from_json(const nlohmann::json &j)
{
    std::vector<BlowUpStep> history;
    try {
        for (const auto &step : j.at("history")) {
            const auto &cone = step.at("cone");
            const IntVec2 l{int_from_json(cone.at(0).at(0)), int_from_json(cone.at(0).at(1))};
            const IntVec2 r{int_from_json(cone.at(1).at(0)), int_from_json(cone.at(1).at(1))};
            const IntVec2 w{int_from_json(step.at("ray").at(0)), int_from_json(step.at("ray").at(1))};
            history.push_back({l, r, w});
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string("malformed model JSON: ") + e.what());
    }
    ToricSurfaceModel m = ToricSurfaceModel::replay(history);
    if (j.contains("rays")) {
        std::vector<IntVec2> rays;
        for (const auto &r : j.at("rays")) {
            rays.push_back({int_from_json(r.at(0)), int_from_json(r.at(1))});
        }
        if (rays != m.fan().rays()) {
            throw Error(ErrorKind::ParseError, "model JSON rays disagree with its history");
        }
    }
    return m;
}

} // namespace cremona
