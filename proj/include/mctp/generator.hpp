#pragma once

#include "instance.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace mctp {

    // Seedable source used for every random draw in the toolkit.
    //
    // Bits come from std::mt19937_64, whose output sequence is fixed by the C++ standard.
    // Doubles are formed from the top 53 bits instead of std::uniform_real_distribution,
    // whose algorithm is implementation defined, so streams match across standard libraries.
    class Rng {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // Uniform on [0, 1).
        double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

        // Uniform on [0, n).
        std::uint64_t below(std::uint64_t n) {
            // Rejection sampling keeps the draw unbiased.
            const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
            std::uint64_t x = engine_();
            while (x >= limit) x = engine_();
            return x % n;
        }

        std::uint64_t bits() { return engine_(); }

    private:
        std::mt19937_64 engine_;
    };

    // Mixes a base seed with a stream index into an independent seed.
    inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // One of the 15 benchmark subclasses, e.g. "150-2".
    struct InstanceClass {
        int total = 100;
        int subclass = 1;

        static InstanceClass parse(const std::string &text) {
            const auto dash = text.find('-');
            if (dash == std::string::npos) throw InvalidInstance("instance class must look like 100-1, got '" + text + "'");
            InstanceClass cls;
            try {
                cls.total = std::stoi(text.substr(0, dash));
                cls.subclass = std::stoi(text.substr(dash + 1));
            } catch (const std::exception &) {
                throw InvalidInstance("instance class must look like 100-1, got '" + text + "'");
            }
            cls.validate();
            return cls;
        }

        void validate() const {
            if (total != 100 && total != 150 && total != 200 && total != 300 && total != 400) {
                throw InvalidInstance("unknown class total " + std::to_string(total));
            }
            if (subclass < 1 || subclass > 3) {
                throw InvalidInstance("subclass must be 1, 2 or 3");
            }
        }

        [[nodiscard]] int num_v() const {
            switch (total) {
                case 150: return 50;
                case 300: return 100;
                default: return total / 2;
            }
        }

        [[nodiscard]] int num_w() const { return total - num_v(); }

        // |T| = |V| / {8, 4, 2}, rounded half up, base included.
        [[nodiscard]] int num_t() const {
            const int divisor = subclass == 1 ? 8 : subclass == 2 ? 4 : 2;
            return (2 * num_v() + divisor) / (2 * divisor);
        }

        [[nodiscard]] int r() const {
            if (total == 300) return 3;
            if (total == 400) return 4;
            return 2;
        }

        [[nodiscard]] static int m() { return 3; }

        [[nodiscard]] std::string name() const { return std::to_string(total) + "-" + std::to_string(subclass); }

        friend bool operator==(const InstanceClass &, const InstanceClass &) = default;
    };

    inline std::vector<InstanceClass> all_instance_classes() {
        std::vector<InstanceClass> out;
        for (int total : {100, 150, 200, 300, 400}) {
            for (int sub = 1; sub <= 3; ++sub) out.push_back({total, sub});
        }
        return out;
    }

    /// Random instance of the given subclass.
    ///
    /// All |V| + |W| points are drawn uniformly on [0, 100]^2; the first one is then moved
    /// to a uniform draw on [35, 65]^2 and becomes the base. The following |T| - 1 points are
    /// T*, then V \ T, then W. The radius comes from select_c.
    inline Instance generate_instance(const InstanceClass &cls, std::uint64_t seed) {
        cls.validate();
        Rng rng(seed);
        const int nv = cls.num_v();
        const int total = cls.total;
        std::vector<Point> coords(static_cast<std::size_t>(total));
        for (auto &p : coords) {
            p.x = rng.uniform(0.0, 100.0);
            p.y = rng.uniform(0.0, 100.0);
        }
        coords[0].x = rng.uniform(35.0, 65.0);
        coords[0].y = rng.uniform(35.0, 65.0);

        std::vector<char> in_t(static_cast<std::size_t>(nv), 0);
        for (int i = 0; i < cls.num_t(); ++i) in_t[static_cast<std::size_t>(i)] = 1;

        const double c = select_c(coords, nv, in_t);
        return Instance(std::move(coords), nv, std::move(in_t), InstanceClass::m(), c, cls.r());
    }

}  // namespace mctp
