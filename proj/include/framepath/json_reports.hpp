#pragma once

#include <string>

#include <json.hpp>

#include "framepath/area.hpp"
#include "framepath/constants.hpp"
#include "framepath/tail.hpp"

namespace framepath {

inline nlohmann::json to_json(const Constants& k) {
    return nlohmann::json{
        {"alpha", k.alpha},
        {"beta", k.beta},
        {"p", k.p},
        {"pprime", k.pprime},
        {"c_alpha_p", k.c_alpha_p},
        {"d_alpha_p", k.d_alpha_p},
        {"d_alpha_beta_p_pprime", k.d_alpha_beta_p_pprime},
        {"d_p_lip", k.d_p_lip},
        {"d1", k.d1},
        {"d2", k.d2},
    };
}

inline nlohmann::json to_json(const TailReport& r) {
    nlohmann::json moments;
    for (const auto& [pprime, est] : r.moment_estimates) {
        moments[format_g17(pprime)] = {{"estimate", est.first}, {"stderr", est.second}};
    }
    return nlohmann::json{
        {"params",
         {{"p", r.p},
          {"alpha", r.alpha},
          {"h1", r.h1.value()},
          {"h2", r.h2.value()},
          {"level", r.level},
          {"trials", r.trials},
          {"seed", r.seed.value},
          {"d1", r.d1},
          {"d2", r.d2},
          {"normalizer", r.normalizer}}},
        {"r", r.r_grid},
        {"survival", r.empirical_survival},
        {"bound", r.bound},
        {"moments", moments},
        {"deviation",
         {{"survival", r.deviation_survival},
          {"norm_mean", r.norm_mean},
          {"norm_median", r.norm_median}}},
    };
}

inline nlohmann::json to_json(const DiagonalReport& r) {
    return nlohmann::json{
        {"s", r.s.value()},
        {"offsets", r.offsets},
        {"mean_above", r.mean_above},
        {"se_above", r.se_above},
        {"mean_below", r.mean_below},
        {"se_below", r.se_below},
    };
}

}  // namespace framepath
