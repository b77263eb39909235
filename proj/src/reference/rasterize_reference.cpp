// Copyright 2026 The cabinsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cabinsynth/error.hpp"
#include "cabinsynth/reference.hpp"

namespace cabinsynth::reference {

IndexedMask rasterize(const std::vector<ProxyBody>& bodies, const CameraSpec& camera) {
  const EquisolidCamera cam(camera);
  IndexedMask mask(camera.image_size.width, camera.image_size.height);
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      Vec3 ray;
      try {
        ray = cam.unproject(x + 0.5, y + 0.5);
      } catch (const OutOfFovError&) {
        continue;
      }
      const Vec3 dir = cam.camera_to_world_direction(ray);
      InstanceId best_id = 0;
      double best_t = 0.0;
      for (const auto& body : bodies)
        for (const auto& e : body.ellipsoids) {
          auto t = intersect(e, cam.position(), dir);
          if (t && (best_id == 0 || *t < best_t || (*t == best_t && body.instance_id < best_id))) {
            best_id = body.instance_id;
            best_t = *t;
          }
        }
      mask(x, y) = best_id;
    }
  return mask;
}

}  // namespace cabinsynth::reference
