package demo.auth;

import java.util.List;

public class RoleLoader {

    @SuppressWarnings("unchecked")
    List<String> loadRoles(HttpSession httpSession) {
        Object rolesTmp = httpSession.getAttribute(SurenessConstant.ROLES);
        List<String> roles = rolesTmp == null ? null : (List<String>) rolesTmp;
        return roles;
    }
}
