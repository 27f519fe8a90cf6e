#ifndef CREMONA_TORIC_HPP
#define CREMONA_TORIC_HPP

#include <optional>
#include <vector>

#include <json.hpp>

#include <cremona/monomial.hpp>

namespace cremona {

// Complete fan in Z^2 given by primitive rays in counterclockwise order,
// starting from the first ray at angle >= 0 from (1, 0). Cone i is spanned by
// rays i and i+1 (cyclically).
//
// Boundary dictionary for the standard fan of P^2:
//   (1, 0)   <-> {x = 0}
//   (0, 1)   <-> {y = 0}
//   (-1, -1) <-> {z = 0}
// so the cone between two of these rays is the intersection point of the two
// lines, e.g. cone <(0,1), (-1,-1)> <-> [1:0:0].
class Fan2D {
public:
    // Validates primitivity, distinct directions and completeness.
    static Fan2D from_rays(std::vector<IntVec2> rays);
    static Fan2D standard_p2();

    const std::vector<IntVec2> &rays() const noexcept { return rays_; }
    std::size_t size() const noexcept { return rays_.size(); }
    const IntVec2 &ray(std::size_t i) const { return rays_.at(i % rays_.size()); }
    std::optional<std::size_t> index_of(const IntVec2 &ray) const;
    bool is_smooth() const;

    // Index of the ray equal to v's direction, or of the cone containing v
    // in its interior.
    struct Location {
        bool on_ray;
        std::size_t index;
    };
    Location locate(const IntVec2 &v) const;

    friend bool operator==(const Fan2D &, const Fan2D &) = default;

private:
    friend class ToricSurfaceModel;
    std::vector<IntVec2> rays_;
};

bool same_ray_set(const Fan2D &a, const Fan2D &b);

IntVec2 primitive(const IntVec2 &v);
// Counterclockwise angular order from the positive x axis, exact.
bool angle_less(const IntVec2 &u, const IntVec2 &v);

struct BlowUpStep {
    IntVec2 left;
    IntVec2 right;
    IntVec2 ray; // left + right
};

// P^2 blown up at a sequence of toric points.
class ToricSurfaceModel {
public:
    static ToricSurfaceModel p2();
    // Replays `history` from P^2; throws NotAdjacent on an invalid step.
    static ToricSurfaceModel replay(const std::vector<BlowUpStep> &history);

    const Fan2D &fan() const noexcept { return fan_; }
    const std::vector<BlowUpStep> &history() const noexcept { return history_; }

    // Blows up the toric point of the cone <left, right>; the rays must be
    // adjacent (NotAdjacent otherwise).
    ToricSurfaceModel blow_up(const IntVec2 &left, const IntVec2 &right) const;
    ToricSurfaceModel blow_up_cone(std::size_t cone) const;

private:
    Fan2D fan_ = Fan2D::standard_p2();
    std::vector<BlowUpStep> history_;
};

struct RayImage {
    enum class Kind { OntoRay, IntoConeInterior };
    Kind kind;
    IntVec2 image;                 // primitive A * ray
    std::optional<IntVec2> left;   // enclosing cone for IntoConeInterior
    std::optional<IntVec2> right;

    bool contracted() const noexcept { return kind == Kind::IntoConeInterior; }
};

RayImage ray_image(const IntMatrix2 &a, const IntVec2 &ray, const Fan2D &target);

// Number of boundary lines of P^2 that f_A contracts.
int E_of_monomial(const IntMatrix2 &a);

struct MonomialResolution {
    ToricSurfaceModel source;
    ToricSurfaceModel target;
};

// Minimal source model on which f_A becomes a morphism onto the target model
// (A maps the source fan onto the target fan cone by cone). Both models are
// verified before returning.
MonomialResolution resolve_monomial(const IntMatrix2 &a);

// Minimal model whose fan contains all `required` rays.
ToricSurfaceModel minimal_model_containing(const std::vector<IntVec2> &required);

struct OrbitReport {
    IntVec2 start;
    std::vector<IntVec2> rays; // rays[n] = primitive A^(n+1) start
    std::vector<RayImage> tags;
    std::optional<std::size_t> fixed_at; // first n with rays[n] equal to its predecessor
};

// Iterates the ray under A for max_steps steps, tagging each image against
// `fan`. NotLoxodromic unless A is loxodromic.
OrbitReport boundary_orbit(const IntMatrix2 &a, const IntVec2 &ray, const Fan2D &fan, std::size_t max_steps);

// Number when it fits a long, decimal string otherwise.
nlohmann::json json_int(const BigInt &n);
nlohmann::json to_json(const IntVec2 &v);
nlohmann::json to_json(const Fan2D &fan);
nlohmann::json to_json(const ToricSurfaceModel &model);
nlohmann::json to_json(const RayImage &image);
nlohmann::json to_json(const OrbitReport &report);
ToricSurfaceModel model_from_json(const nlohmann::json &j);

} // namespace cremona

#endif
